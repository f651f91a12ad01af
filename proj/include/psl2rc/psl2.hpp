#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "psl2rc/gf.hpp"

namespace psl2rc {

inline constexpr std::int64_t kDefaultOracleCap = 100000;

/// Element of PSL2(q): a determinant-1 matrix over GF(q) identified with its
/// negative when q is odd. Construction normalizes the sign so that the first
/// nonzero entry in row-major order has discrete log < (q-1)/2 with respect
/// to the canonical field generator; normalize(M) == normalize(-M).
class ProjMatrix {
 public:
  /// Entries row-major. Throws InvalidMatrix unless det = 1.
  static ProjMatrix make(const FieldElem& a, const FieldElem& b, const FieldElem& c,
                         const FieldElem& d);
  static ProjMatrix identity(const Field& f);

  const Field& field() const { return entries_[0].field(); }
  const FieldElem& a() const { return entries_[0]; }
  const FieldElem& b() const { return entries_[1]; }
  const FieldElem& c() const { return entries_[2]; }
  const FieldElem& d() const { return entries_[3]; }

  ProjMatrix operator*(const ProjMatrix& rhs) const;
  ProjMatrix inverse() const;
  ProjMatrix power(std::int64_t k) const;
  bool operator==(const ProjMatrix& rhs) const;
  bool operator!=(const ProjMatrix& rhs) const { return !(*this == rhs); }

  bool is_identity() const;
  /// Trace of the chosen sign representative (a class invariant only up to
  /// sign; see trace_key for the sign-free form).
  FieldElem trace() const;
  /// min(index(t), index(-t)) over the trace t: invariant of the projective
  /// class within its element-order stratum.
  std::int64_t trace_key() const;

  std::string to_string() const;

 private:
  explicit ProjMatrix(std::array<FieldElem, 4> e) : entries_(std::move(e)) {}
  std::array<FieldElem, 4> entries_;
};

/// A labeled conjugacy class of PSL2(q).
struct ConjugacyClass {
  enum class Family { Identity, UnipotentN, UnipotentNPrime, Split, NonSplit };

  Family family = Family::Identity;
  std::int64_t param = 0;  // a for S(a), b for T(b), 0 otherwise
  ProjMatrix rep;
  std::int64_t size = 0;
  int elt_order = 1;
  std::string label;  // "I", "N", "N'", "S(a)", "T(b)"
};

/// Conjugacy orbit found by exhaustive search.
struct OrbitClass {
  ProjMatrix rep;  // smallest element of the orbit in enumeration order
  std::int64_t size = 0;
  int elt_order = 1;
};

/// |PSL2(q)| = q(q^2-1)/gcd(2, q-1). Throws NotPrimePower.
std::int64_t group_order(std::int64_t q);

/// The explicit class representatives, in fixed column order: I, N, [N'],
/// split family S(a) ascending (half-size split class last), nonsplit family
/// T(b) ascending (half-size nonsplit class last). Parameter ranges and class
/// sizes depend on q mod 4; empty ranges contribute no classes.
std::vector<ConjugacyClass> class_reps(std::int64_t q);

/// Least n >= 1 with g^n projectively trivial.
int element_order(const ProjMatrix& g);

/// Whether some x conjugates g onto h, decided by exhaustive orbit
/// computation over the whole group (cached per q). OracleCapExceeded when
/// the group is larger than oracle_cap.
bool conjugate_test(const ProjMatrix& g, const ProjMatrix& h,
                    std::int64_t oracle_cap = kDefaultOracleCap);

/// Whether g is conjugate to g^k for every k coprime to its order.
bool is_rational_element(const ProjMatrix& g, std::int64_t oracle_cap = kDefaultOracleCap);

/// Partition of the full group into conjugacy orbits, sorted by
/// (element order, size, representative). Independent of class_reps.
std::vector<OrbitClass> enumerate_classes_bruteforce(std::int64_t q,
                                                     std::int64_t oracle_cap = kDefaultOracleCap);

/// Number of brute-force classes whose elements pass is_rational_element.
int count_rational_classes_oracle(std::int64_t q, std::int64_t oracle_cap = kDefaultOracleCap);

}  // namespace psl2rc
