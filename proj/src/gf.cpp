#include "psl2rc/gf.hpp"

#include <algorithm>
#include <sstream>

#include "psl2rc/numbers.hpp"

namespace psl2rc {

namespace detail {

using Poly = std::vector<std::int64_t>;  // coefficients low degree first

struct FieldData {
  std::int64_t p = 0;
  int m = 0;
  std::int64_t q = 0;  // p^m
  Poly modulus;        // monic, degree m

  mutable std::once_flag gen_once;
  mutable std::vector<std::int64_t> gen_coeffs;
};

namespace {

std::int64_t mod_p(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly poly_mul(const Poly& a, const Poly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = mod_p(out[i + j] + a[i] * b[j], p);
  }
  trim(out);
  return out;
}

// Remainder of a by monic-leading f (any nonzero leading coefficient works;
// we divide through by its inverse mod p).
Poly poly_mod(Poly a, const Poly& f, std::int64_t p) {
  trim(a);
  int df = degree(f);
  std::int64_t lead_inv = powmod(f.back(), p - 2, p);
  while (degree(a) >= df) {
    std::int64_t factor = mod_p(a.back() * lead_inv, p);
    int shift = degree(a) - df;
    for (int i = 0; i <= df; ++i)
      a[i + shift] = mod_p(a[i + shift] - factor * f[i], p);
    trim(a);
  }
  return a;
}

Poly poly_powmod(Poly base, std::int64_t e, const Poly& f, std::int64_t p) {
  Poly acc{1};
  base = poly_mod(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) acc = poly_mod(poly_mul(acc, base, p), f, p);
    base = poly_mod(poly_mul(base, base, p), f, p);
    e >>= 1;
  }
  return acc;
}

Poly poly_gcd(Poly a, Poly b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^e) mod f by iterated Frobenius.
Poly frobenius_power(const Poly& f, std::int64_t p, int e) {
  Poly x{0, 1};
  Poly acc = poly_mod(x, f, p);
  for (int i = 0; i < e; ++i) acc = poly_powmod(std::move(acc), p, f, p);
  return acc;
}

bool is_irreducible(const Poly& f, std::int64_t p) {
  int m = degree(f);
  if (m < 1) return false;
  if (m == 1) return true;
  // x^(p^m) == x mod f, and no factor of degree m/r for prime r | m.
  Poly xq = frobenius_power(f, p, m);
  Poly x{0, 1};
  Poly diff = xq;
  diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
  diff[1] = mod_p(diff[1] - 1, p);
  trim(diff);
  if (!diff.empty()) return false;
  for (std::int64_t r : prime_factors(m)) {
    Poly xe = frobenius_power(f, p, static_cast<int>(m / r));
    Poly d = xe;
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = mod_p(d[1] - 1, p);
    trim(d);
    Poly g = poly_gcd(f, d, p);
    if (degree(g) > 0) return false;
  }
  return true;
}

bool has_scalar_root(const Poly& f, std::int64_t p) {
  for (std::int64_t v = 0; v < p; ++v) {
    std::int64_t acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = mod_p(acc * v + *it, p);
    if (acc == 0) return true;
  }
  return false;
}

// Lexicographically smallest monic irreducible of degree m over GF(p); the
// coefficient tuple (c0, ..., c_{m-1}) is compared constant term first.
// Cheap linear-factor rejects run before the full irreducibility test.
Poly smallest_irreducible(std::int64_t p, int m) {
  Poly f(m + 1, 0);
  f[m] = 1;
  std::vector<std::int64_t> digits(m, 0);  // digits[0] = c0 is most significant
  while (true) {
    bool candidate = m == 1 || digits[0] != 0;
    if (candidate && m > 1) {
      for (int i = 0; i < m; ++i) f[i] = digits[i];
      candidate = !has_scalar_root(f, p);
    }
    if (candidate) {
      for (int i = 0; i < m; ++i) f[i] = digits[i];
      if (is_irreducible(f, p)) return f;
    }
    int pos = m - 1;
    while (pos >= 0 && digits[pos] == p - 1) digits[pos--] = 0;
    if (pos < 0) break;
    ++digits[pos];
  }
  fail(Errc::NotPrime, "no irreducible modulus found (p not prime?)");
}

}  // namespace

}  // namespace detail

Field Field::make(std::int64_t p, int m) {
  if (m < 1) fail(Errc::DegreeZero, "extension degree must be >= 1, got " + std::to_string(m));
  if (!is_prime(p)) fail(Errc::NotPrime, std::to_string(p) + " is not prime");
  constexpr std::int64_t kSizeCap = std::int64_t(1) << 20;
  std::int64_t q = 1;
  for (int i = 0; i < m; ++i) {
    q *= p;
    if (q > kSizeCap) fail(Errc::CapExceeded, "field size exceeds 2^20");
  }
  auto data = std::make_shared<detail::FieldData>();
  data->p = p;
  data->m = m;
  data->q = q;
  data->modulus = detail::smallest_irreducible(p, m);
  return Field(std::move(data));
}

std::int64_t Field::characteristic() const { return data_->p; }
int Field::degree() const { return data_->m; }
std::int64_t Field::size() const { return data_->q; }
const std::vector<std::int64_t>& Field::modulus() const { return data_->modulus; }

bool Field::same_field(const Field& other) const {
  return data_->p == other.data_->p && data_->m == other.data_->m;
}

FieldElem Field::zero() const { return FieldElem(*this, std::vector<std::int64_t>(data_->m, 0)); }

FieldElem Field::one() const { return from_int(1); }

FieldElem Field::from_int(std::int64_t n) const {
  std::vector<std::int64_t> c(data_->m, 0);
  c[0] = detail::mod_p(n, data_->p);
  return FieldElem(*this, std::move(c));
}

FieldElem Field::element(std::vector<std::int64_t> coeffs) const {
  if (static_cast<int>(coeffs.size()) > data_->m)
    fail(Errc::IndexOutOfRange, "residue degree exceeds field degree");
  coeffs.resize(data_->m, 0);
  for (auto& c : coeffs) c = detail::mod_p(c, data_->p);
  return FieldElem(*this, std::move(coeffs));
}

FieldElem Field::element_at(std::int64_t ordinal) const {
  if (ordinal < 0 || ordinal >= data_->q) fail(Errc::IndexOutOfRange, "element ordinal out of range");
  std::vector<std::int64_t> c(data_->m, 0);
  for (int i = data_->m - 1; i >= 0; --i) {
    c[i] = ordinal % data_->p;
    ordinal /= data_->p;
  }
  return FieldElem(*this, std::move(c));
}

FieldElem Field::from_index(std::int64_t index) const {
  if (index < 0 || index >= data_->q) fail(Errc::IndexOutOfRange, "element index out of range");
  std::vector<std::int64_t> c(data_->m, 0);
  for (int i = 0; i < data_->m; ++i) {
    c[i] = index % data_->p;
    index /= data_->p;
  }
  return FieldElem(*this, std::move(c));
}

FieldElem Field::generator() const {
  std::call_once(data_->gen_once, [this] {
    data_->gen_coeffs = find_generator(*this).coeffs();
  });
  return FieldElem(*this, data_->gen_coeffs);
}

bool FieldElem::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c == 0; });
}

std::int64_t FieldElem::index() const {
  std::int64_t p = field_.characteristic();
  std::int64_t out = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) out = out * p + *it;
  return out;
}

namespace {

void require_same(const FieldElem& a, const FieldElem& b) {
  if (!a.field().same_field(b.field()))
    fail(Errc::FieldMismatch, "operands belong to different fields");
}

}  // namespace

FieldElem FieldElem::operator+(const FieldElem& rhs) const {
  require_same(*this, rhs);
  std::int64_t p = field_.characteristic();
  std::vector<std::int64_t> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = detail::mod_p(coeffs_[i] + rhs.coeffs_[i], p);
  return FieldElem(field_, std::move(c));
}

FieldElem FieldElem::operator-(const FieldElem& rhs) const {
  require_same(*this, rhs);
  std::int64_t p = field_.characteristic();
  std::vector<std::int64_t> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = detail::mod_p(coeffs_[i] - rhs.coeffs_[i], p);
  return FieldElem(field_, std::move(c));
}

FieldElem FieldElem::operator-() const {
  std::int64_t p = field_.characteristic();
  std::vector<std::int64_t> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = detail::mod_p(-coeffs_[i], p);
  return FieldElem(field_, std::move(c));
}

FieldElem FieldElem::operator*(const FieldElem& rhs) const {
  require_same(*this, rhs);
  std::int64_t p = field_.characteristic();
  detail::Poly prod = detail::poly_mul(coeffs_, rhs.coeffs_, p);
  prod = detail::poly_mod(std::move(prod), field_.modulus(), p);
  prod.resize(field_.degree(), 0);
  return FieldElem(field_, std::move(prod));
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) fail(Errc::DivideByZero, "inverse of zero");
  // Extended Euclid on (this, modulus) over GF(p).
  std::int64_t p = field_.characteristic();
  detail::Poly r0 = field_.modulus();
  detail::Poly r1 = coeffs_;
  detail::trim(r1);
  detail::Poly s0{}, s1{1};
  while (!r1.empty() && detail::degree(r1) > 0) {
    // one division step: r0 = q*r1 + r2
    detail::Poly q;
    detail::Poly rem = r0;
    std::int64_t lead_inv = powmod(r1.back(), p - 2, p);
    q.assign(std::max<std::size_t>(rem.size() - r1.size() + 1, 1), 0);
    while (detail::degree(rem) >= detail::degree(r1)) {
      std::int64_t factor = detail::mod_p(rem.back() * lead_inv, p);
      int shift = detail::degree(rem) - detail::degree(r1);
      q[shift] = factor;
      for (std::size_t i = 0; i < r1.size(); ++i)
        rem[i + shift] = detail::mod_p(rem[i + shift] - factor * r1[i], p);
      detail::trim(rem);
    }
    detail::trim(q);
    detail::Poly s2 = s0;
    detail::Poly qs1 = detail::poly_mul(q, s1, p);
    s2.resize(std::max(s2.size(), qs1.size()), 0);
    for (std::size_t i = 0; i < qs1.size(); ++i) s2[i] = detail::mod_p(s2[i] - qs1[i], p);
    detail::trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant c; inverse = s1 / c.
  std::int64_t c_inv = powmod(r1.empty() ? 1 : r1[0], p - 2, p);
  detail::Poly out = s1;
  out.resize(field_.degree(), 0);
  for (auto& v : out) v = detail::mod_p(v * c_inv, p);
  return FieldElem(field_, std::move(out));
}

FieldElem FieldElem::operator/(const FieldElem& rhs) const {
  require_same(*this, rhs);
  if (rhs.is_zero()) fail(Errc::DivideByZero, "division by zero");
  return *this * rhs.inverse();
}

bool FieldElem::operator==(const FieldElem& rhs) const {
  return field_.same_field(rhs.field()) && coeffs_ == rhs.coeffs_;
}

std::string FieldElem::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << "+";
    if (i == 0 || coeffs_[i] != 1) os << coeffs_[i];
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

FieldElem pow(const FieldElem& a, std::int64_t k) {
  if (k < 0) {
    if (a.is_zero()) fail(Errc::DivideByZero, "zero to a negative power");
    return pow(a.inverse(), -k);
  }
  FieldElem acc = a.field().one();
  FieldElem base = a;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

std::int64_t multiplicative_order(const FieldElem& a) {
  if (a.is_zero()) fail(Errc::DivideByZero, "order of zero");
  std::int64_t n = a.field().size() - 1;
  std::int64_t order = n;
  for (std::int64_t r : prime_factors(n)) {
    while (order % r == 0 && pow(a, order / r) == a.field().one()) order /= r;
  }
  return order;
}

FieldElem find_generator(const Field& f) {
  std::int64_t n = f.size() - 1;
  auto factors = prime_factors(n);
  for (std::int64_t i = 0; i < f.size(); ++i) {
    FieldElem g = f.element_at(i);
    if (g.is_zero()) continue;
    bool ok = true;
    for (std::int64_t r : factors) {
      if (pow(g, n / r) == f.one()) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  fail(Errc::NotPrime, "no generator found");  // unreachable for genuine fields
}

FieldElem find_nonsquare(const Field& f) {
  if (f.size() % 2 == 0)
    fail(Errc::EvenCharacteristic, "every element of an even-size field is a square");
  return f.generator();
}

}  // namespace psl2rc
