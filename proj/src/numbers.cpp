#include "psl2rc/numbers.hpp"

namespace psl2rc {

std::string rat_to_string(const Rat& r) {
  Int num = numerator(r);
  Int den = denominator(r);
  std::string out = num.str();
  if (den != 1) {
    out += "/";
    out += den.str();
  }
  return out;
}

namespace {

bool canonical_uint_text(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  if (s.size() > 1 && s[0] == '0') return false;
  return true;
}

}  // namespace

std::optional<Int> parse_canonical_uint(std::string_view text) {
  if (!canonical_uint_text(text)) return std::nullopt;
  return Int(std::string(text));
}

std::optional<ParsedRat> parse_rational(std::string_view text) {
  bool neg = false;
  std::string_view body = text;
  if (!body.empty() && body[0] == '-') {
    neg = true;
    body.remove_prefix(1);
  }
  std::string_view num_part = body;
  std::string_view den_part;
  bool has_den = false;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    has_den = true;
    num_part = body.substr(0, slash);
    den_part = body.substr(slash + 1);
  }

  // A leading zero would make the bigint constructor read the digits as
  // octal, so strip it before converting.
  auto strip_zeros = [](std::string_view s) {
    std::size_t i = 0;
    while (i + 1 < s.size() && s[i] == '0') ++i;
    return s.substr(i);
  };

  if (num_part.empty()) return std::nullopt;
  for (char c : num_part)
    if (c < '0' || c > '9') return std::nullopt;
  Int num = Int(std::string(strip_zeros(num_part)));

  Int den = 1;
  if (has_den) {
    if (den_part.empty()) return std::nullopt;
    for (char c : den_part)
      if (c < '0' || c > '9') return std::nullopt;
    den = Int(std::string(strip_zeros(den_part)));
    if (den == 0) return std::nullopt;
  }

  if (neg) num = -num;
  ParsedRat out;
  out.value = Rat(num, den);

  bool canon = canonical_uint_text(num_part);
  if (neg && num == 0) canon = false;  // "-0" is not canonical
  if (has_den) {
    canon = canon && canonical_uint_text(den_part) && den > 1 && gcd(abs(num), den) == 1;
  }
  out.canonical = canon;
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool prime_power_decompose(std::int64_t n, std::int64_t* p, int* m) {
  if (n < 2) return false;
  std::int64_t base = n;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      base = d;
      break;
    }
  }
  std::int64_t rest = n;
  int exp = 0;
  while (rest % base == 0) {
    rest /= base;
    ++exp;
  }
  if (rest != 1) return false;
  if (p) *p = base;
  if (m) *m = exp;
  return true;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::int64_t powmod(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  base %= mod;
  if (base < 0) base += mod;
  // __int128 keeps the products exact for mod up to 2^62.
  unsigned __int128 acc = 1;
  unsigned __int128 b = static_cast<unsigned __int128>(base);
  while (exp > 0) {
    if (exp & 1) acc = acc * b % static_cast<unsigned __int128>(mod);
    b = b * b % static_cast<unsigned __int128>(mod);
    exp >>= 1;
  }
  return static_cast<std::int64_t>(acc);
}

int legendre_symbol(std::int64_t a, std::int64_t p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  std::int64_t e = powmod(a, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

}  // namespace psl2rc
