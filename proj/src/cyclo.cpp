#include "psl2rc/cyclo.hpp"

#include <atomic>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace psl2rc {

namespace {

std::atomic<std::int64_t> g_conductor_cap{std::int64_t(1) << 16};

std::int64_t mod_n(std::int64_t e, std::int64_t n) {
  e %= n;
  return e < 0 ? e + n : e;
}

// Cached per-conductor data: phi(n) and the nonzero coefficients of the
// cyclotomic polynomial Phi_n below its leading term (Phi_n is monic).
struct ConductorData {
  std::int64_t phi = 0;
  std::vector<std::pair<std::int64_t, Int>> low_terms;  // (exponent, coefficient)
};

std::vector<Int> cyclotomic_poly(std::int64_t n, std::unordered_map<std::int64_t, std::vector<Int>>& cache) {
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // (x^n - 1) / prod_{d | n, d < n} Phi_d, exact integer division.
  std::vector<Int> acc(n + 1);
  acc[0] = -1;
  acc[n] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    std::vector<Int> div = cyclotomic_poly(d, cache);
    // acc /= div (both monic up to sign of trailing part; division is exact)
    std::vector<Int> quot(acc.size() - div.size() + 1);
    std::vector<Int> rem = acc;
    for (std::int64_t i = static_cast<std::int64_t>(quot.size()) - 1; i >= 0; --i) {
      Int c = rem[i + div.size() - 1];  // leading coeff of div is 1
      quot[i] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j < div.size(); ++j) rem[i + j] -= c * div[j];
    }
    acc = std::move(quot);
  }
  cache.emplace(n, acc);
  return acc;
}

const ConductorData& conductor_data(std::int64_t n) {
  // Read-mostly cache: the shared lock keeps the canonicalization hot path
  // contention-free once a conductor has been seen.
  static std::shared_mutex mu;
  static std::unordered_map<std::int64_t, ConductorData> table;
  static std::unordered_map<std::int64_t, std::vector<Int>> poly_cache;
  {
    std::shared_lock<std::shared_mutex> lock(mu);
    auto it = table.find(n);
    if (it != table.end()) return it->second;
  }
  std::unique_lock<std::shared_mutex> lock(mu);
  auto it = table.find(n);
  if (it != table.end()) return it->second;
  std::vector<Int> poly = cyclotomic_poly(n, poly_cache);
  ConductorData data;
  data.phi = static_cast<std::int64_t>(poly.size()) - 1;
  for (std::int64_t e = 0; e < data.phi; ++e)
    if (poly[e] != 0) data.low_terms.emplace_back(e, poly[e]);
  return table.emplace(n, std::move(data)).first->second;
}

void check_conductor(std::int64_t n) {
  if (n < 1) fail(Errc::ConductorOverflow, "conductor must be positive");
  if (n > g_conductor_cap.load())
    fail(Errc::ConductorOverflow,
         "conductor " + std::to_string(n) + " exceeds cap " + std::to_string(g_conductor_cap.load()));
}

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
  std::int64_t l = std::lcm(a, b);
  check_conductor(l);
  return l;
}

// Reduce raw exponent map into canonical power-basis form at conductor n.
void reduce_in_place(std::int64_t n, std::map<std::int64_t, Rat>& m) {
  const ConductorData& data = conductor_data(n);
  // Repeatedly rewrite the highest exponent >= phi(n) via
  // x^phi = -(low terms of Phi_n).
  while (!m.empty()) {
    auto last = std::prev(m.end());
    std::int64_t e = last->first;
    if (e < data.phi) break;
    Rat c = last->second;
    m.erase(last);
    if (c == 0) continue;
    for (const auto& [j, coef] : data.low_terms) {
      Rat& slot = m[e - data.phi + j];
      slot -= c * Rat(coef);
    }
  }
  for (auto it = m.begin(); it != m.end();) {
    if (it->second == 0)
      it = m.erase(it);
    else
      ++it;
  }
}

std::map<std::int64_t, Rat> fold_mod_n(std::int64_t n, std::map<std::int64_t, Rat> raw) {
  std::map<std::int64_t, Rat> folded;
  for (auto& [e, c] : raw) {
    if (c == 0) continue;
    folded[mod_n(e, n)] += c;
  }
  return folded;
}

}  // namespace

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p : prime_factors(n)) result -= result / p;
  return result;
}

std::int64_t conductor_cap() { return g_conductor_cap.load(); }
void set_conductor_cap(std::int64_t cap) { g_conductor_cap.store(cap); }

Cyc Cyc::rational(Rat r) {
  Cyc out;
  if (r != 0) out.coeffs_[0] = std::move(r);
  return out;
}

Cyc Cyc::make(std::int64_t n, std::map<std::int64_t, Rat> raw) {
  check_conductor(n);
  Cyc out;
  out.n_ = n;
  if (n == 1) {
    Rat total;
    for (auto& [e, c] : raw) total += c;
    if (total != 0) out.coeffs_[0] = std::move(total);
    return out;
  }
  auto folded = fold_mod_n(n, std::move(raw));
  reduce_in_place(n, folded);
  out.coeffs_ = std::move(folded);
  return out;
}

Cyc Cyc::lifted_to(std::int64_t m) const {
  if (m == n_) return *this;
  if (m % n_ != 0) fail(Errc::ConductorOverflow, "lift target must be a multiple of the conductor");
  std::map<std::int64_t, Rat> raw;
  std::int64_t scale = m / n_;
  for (const auto& [e, c] : coeffs_) raw[e * scale] = c;
  return make(m, std::move(raw));
}

Cyc Cyc::operator+(const Cyc& rhs) const {
  std::int64_t l = lcm_checked(n_, rhs.n_);
  Cyc a = lifted_to(l);
  Cyc b = rhs.lifted_to(l);
  std::map<std::int64_t, Rat> raw = std::move(a.coeffs_);
  for (const auto& [e, c] : b.coeffs_) raw[e] += c;
  return make(l, std::move(raw));
}

Cyc Cyc::operator-(const Cyc& rhs) const { return *this + (-rhs); }

Cyc Cyc::operator-() const {
  Cyc out;
  out.n_ = n_;
  for (const auto& [e, c] : coeffs_) out.coeffs_[e] = -c;
  return out;
}

Cyc Cyc::operator*(const Cyc& rhs) const {
  std::int64_t l = lcm_checked(n_, rhs.n_);
  Cyc a = lifted_to(l);
  Cyc b = rhs.lifted_to(l);
  std::map<std::int64_t, Rat> raw;
  for (const auto& [e1, c1] : a.coeffs_)
    for (const auto& [e2, c2] : b.coeffs_) raw[mod_n(e1 + e2, l)] += c1 * c2;
  return make(l, std::move(raw));
}

bool Cyc::operator==(const Cyc& rhs) const {
  if (n_ == rhs.n_) return coeffs_ == rhs.coeffs_;
  std::int64_t l = lcm_checked(n_, rhs.n_);
  return lifted_to(l).coeffs_ == rhs.lifted_to(l).coeffs_;
}

std::string Cyc::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    std::string cs = rat_to_string(c);
    if (e == 0) {
      if (!first && cs[0] != '-') os << "+";
      os << cs;
    } else {
      if (c == 1) {
        if (!first) os << "+";
      } else if (c == -1) {
        os << "-";
      } else {
        if (!first && cs[0] != '-') os << "+";
        os << cs << "*";
      }
      os << "z" << n_;
      if (e != 1) os << "^" << e;
    }
    first = false;
  }
  return os.str();
}

Cyc root_of_unity(std::int64_t n, std::int64_t k) {
  check_conductor(n);
  std::map<std::int64_t, Rat> raw;
  raw[mod_n(k, n)] = 1;
  return Cyc::make(n, std::move(raw));
}

Cyc two_cos(std::int64_t n, std::int64_t a) {
  check_conductor(n);
  std::map<std::int64_t, Rat> raw;
  raw[mod_n(a, n)] += 1;
  raw[mod_n(-a, n)] += 1;
  return Cyc::make(n, std::move(raw));
}

Cyc galois(const Cyc& a, std::int64_t k) {
  std::int64_t n = a.conductor();
  std::int64_t kk = mod_n(k, n);
  if (std::gcd(kk, n) != 1)
    fail(Errc::NotCoprime, "galois exponent " + std::to_string(k) + " not coprime to conductor " +
                               std::to_string(n));
  std::map<std::int64_t, Rat> raw;
  for (const auto& [e, c] : a.coeffs()) raw[mod_n(e * kk, n)] += c;
  return Cyc::make(n, std::move(raw));
}

std::optional<Rat> is_rational(const Cyc& a) {
  if (a.coeffs().empty()) return Rat(0);
  if (a.coeffs().size() == 1 && a.coeffs().begin()->first == 0) return a.coeffs().begin()->second;
  return std::nullopt;
}

bool is_rational_galois_route(const Cyc& a) {
  std::int64_t n = a.conductor();
  for (std::int64_t k = 2; k < n; ++k) {
    if (std::gcd(k, n) != 1) continue;
    if (galois(a, k) != a) return false;
  }
  return true;
}

bool trig_is_rational(std::int64_t n, std::int64_t a) {
  if (n < 1) fail(Errc::ConductorOverflow, "order must be positive");
  std::int64_t r = mod_n(a, n);
  std::int64_t d = n / std::gcd(r, n);  // gcd(0, n) = n, so a = 0 gives d = 1
  return d == 1 || d == 2 || d == 3 || d == 4 || d == 6;
}

Cyc sqrt_signed_q(std::int64_t p, int m) {
  if (p == 2) fail(Errc::EvenCharacteristic, "no signed square root in characteristic 2");
  if (!is_prime(p)) fail(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (m < 1) fail(Errc::DegreeZero, "exponent must be >= 1");
  Int scale = 1;  // p^floor(m/2); for even m the whole value is rational
  for (int i = 0; i < m / 2; ++i) scale *= p;
  if (m % 2 == 0) return Cyc::rational(Rat(scale));
  std::map<std::int64_t, Rat> raw;
  for (std::int64_t t = 1; t < p; ++t) raw[t] = Rat(legendre_symbol(t, p));
  Cyc gauss = Cyc::make(p, std::move(raw));
  return gauss * Cyc::rational(Rat(scale));
}

Cyc minimize(const Cyc& a) {
  Cyc cur = a;
  while (cur.conductor() > 1) {
    if (auto r = is_rational(cur)) return Cyc::rational(*r);
    std::int64_t g = cur.conductor();
    for (const auto& [e, c] : cur.coeffs()) g = std::gcd(g, e);
    if (g <= 1) break;
    std::map<std::int64_t, Rat> raw;
    for (const auto& [e, c] : cur.coeffs()) raw[e / g] = c;
    cur = Cyc::make(cur.conductor() / g, std::move(raw));
  }
  return cur;
}

void CycSum::add(const Cyc& a, const Rat& scale) {
  if (scale == 0 || a.is_zero()) return;
  auto& bucket = buckets_[a.conductor()];
  for (const auto& [e, c] : a.coeffs()) bucket[e] += c * scale;
}

void CycSum::add_product(const Cyc& a, const Cyc& b, const Rat& scale) {
  if (scale == 0 || a.is_zero() || b.is_zero()) return;
  std::int64_t l = lcm_checked(a.conductor(), b.conductor());
  std::int64_t sa = l / a.conductor();
  std::int64_t sb = l / b.conductor();
  auto& bucket = buckets_[l];
  for (const auto& [e1, c1] : a.coeffs()) {
    Rat c1s = c1 * scale;
    for (const auto& [e2, c2] : b.coeffs()) bucket[mod_n(e1 * sa + e2 * sb, l)] += c1s * c2;
  }
}

Cyc CycSum::finalize() const {
  std::int64_t l = 1;
  for (const auto& [n, bucket] : buckets_) l = lcm_checked(l, n);
  std::map<std::int64_t, Rat> raw;
  for (const auto& [n, bucket] : buckets_) {
    std::int64_t s = l / n;
    for (const auto& [e, c] : bucket) raw[mod_n(e * s, l)] += c;
  }
  return Cyc::make(l, std::move(raw));
}

}  // namespace psl2rc
