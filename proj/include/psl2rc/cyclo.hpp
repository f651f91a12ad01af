#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "psl2rc/errors.hpp"
#include "psl2rc/numbers.hpp"

namespace psl2rc {

/// Exact element of the cyclotomic field Q(zeta_n). The stored form is
/// canonical: exponents live on the power basis {zeta_n^e : 0 <= e < phi(n)}
/// after reduction by the n-th cyclotomic polynomial, zero coefficients are
/// absent, and coefficients are rationals in lowest terms. Rational numbers
/// are the n = 1 case. Values are immutable and safe to share.
class Cyc {
 public:
  Cyc() : n_(1) {}  // zero

  static Cyc rational(Rat r);
  static Cyc from_int(std::int64_t v) { return rational(Rat(v)); }
  /// Canonicalizes an arbitrary exponent->coefficient map at conductor n.
  static Cyc make(std::int64_t n, std::map<std::int64_t, Rat> raw);

  std::int64_t conductor() const { return n_; }
  const std::map<std::int64_t, Rat>& coeffs() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }

  Cyc operator+(const Cyc& rhs) const;
  Cyc operator-(const Cyc& rhs) const;
  Cyc operator*(const Cyc& rhs) const;
  Cyc operator-() const;
  /// Equality of field values; operands with different conductors are
  /// compared inside Q(zeta_lcm).
  bool operator==(const Cyc& rhs) const;
  bool operator!=(const Cyc& rhs) const { return !(*this == rhs); }

  /// Same value expressed at conductor m (n must divide m).
  Cyc lifted_to(std::int64_t m) const;

  std::string to_string() const;  // symbolic, e.g. "z5-z5^2" or "-1/2"

 private:
  std::int64_t n_;
  std::map<std::int64_t, Rat> coeffs_;
};

/// zeta_n^k, canonicalized. root_of_unity(n, 0) = 1.
Cyc root_of_unity(std::int64_t n, std::int64_t k);

/// zeta_n^a + zeta_n^{-a}.
Cyc two_cos(std::int64_t n, std::int64_t a);

/// Field automorphism zeta_n -> zeta_n^k; requires gcd(k, n) = 1 (NotCoprime
/// otherwise). galois(a, -1) is complex conjugation.
Cyc galois(const Cyc& a, std::int64_t k);

/// The rational value when the canonical support is contained in exponent 0.
std::optional<Rat> is_rational(const Cyc& a);

/// Same predicate decided the slow way: fixed by every Galois automorphism.
/// Kept as an independent route; must agree with is_rational everywhere.
bool is_rational_galois_route(const Cyc& a);

/// True iff 2*cos(2*pi*a/n) is rational, decided purely from the reduced
/// denominator of a/n (rational exactly when it lands in {1,2,3,4,6}).
bool trig_is_rational(std::int64_t n, std::int64_t a);

/// For odd prime p and q = p^m: the exact square root of q when q = 1 mod 4
/// and of -q when q = 3 mod 4. Even m gives the rational p^(m/2); odd m uses
/// the quadratic Gauss sum sum_t (t|p) zeta_p^t, whose square is +p or -p
/// according to p mod 4.
Cyc sqrt_signed_q(std::int64_t p, int m);

/// Shrinks the conductor when the support visibly lies in a subfield
/// (all exponents share a factor with n). Sound but not exhaustive.
Cyc minimize(const Cyc& a);

std::int64_t euler_phi(std::int64_t n);

/// Conductor cap for all cyclotomic construction (default 2^16). Operations
/// whose lcm-lifted conductor would exceed it throw ConductorOverflow.
std::int64_t conductor_cap();
void set_conductor_cap(std::int64_t cap);

/// Accumulator for sums of products of Cyc values. Terms are bucketed per
/// conductor and only canonicalized once in finalize(), which keeps long
/// orthogonality sums cheap.
class CycSum {
 public:
  void add(const Cyc& a, const Rat& scale = Rat(1));
  void add_product(const Cyc& a, const Cyc& b, const Rat& scale = Rat(1));
  Cyc finalize() const;

 private:
  std::map<std::int64_t, std::map<std::int64_t, Rat>> buckets_;
};

}  // namespace psl2rc
