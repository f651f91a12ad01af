#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "psl2rc/errors.hpp"

namespace psl2rc {

class FieldElem;

namespace detail {
struct FieldData;
}

/// Handle to GF(p^m). Immutable once built; cheap to copy and safe to share
/// across threads. The reducing modulus is chosen deterministically: the
/// lexicographically smallest monic irreducible polynomial of degree m over
/// GF(p), comparing coefficient tuples constant term first.
class Field {
 public:
  /// Builds GF(p^m). Throws NotPrime, DegreeZero, or CapExceeded (sizes are
  /// limited to p^m <= 2^20).
  static Field make(std::int64_t p, int m);

  std::int64_t characteristic() const;
  int degree() const;
  std::int64_t size() const;  // p^m

  /// Monic modulus as coefficients c[0] + c[1] x + ... + c[m] x^m.
  const std::vector<std::int64_t>& modulus() const;

  FieldElem zero() const;
  FieldElem one() const;
  /// Scalar n mod p embedded as a constant.
  FieldElem from_int(std::int64_t n) const;
  /// Element with the given residue coefficients (low degree first, fewer
  /// than m entries allowed; entries reduced mod p).
  FieldElem element(std::vector<std::int64_t> coeffs) const;
  /// i-th element in the canonical enumeration: coefficient tuples ordered
  /// lexicographically, constant term most significant. 0 <= i < size().
  FieldElem element_at(std::int64_t ordinal) const;
  /// Inverse of FieldElem::index().
  FieldElem from_index(std::int64_t index) const;

  /// First multiplicative generator in the canonical enumeration order.
  /// Cached after the first call.
  FieldElem generator() const;

  bool same_field(const Field& other) const;

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::FieldData> data_;
  friend class FieldElem;
};

/// Exact element of GF(p^m): a residue polynomial of degree < m. Value type;
/// all operations return fresh values.
class FieldElem {
 public:
  const Field& field() const { return field_; }
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  /// Little-endian base-p packing of the coefficients; a bijection onto
  /// [0, p^m) used for table indexing and hashing.
  std::int64_t index() const;

  FieldElem operator+(const FieldElem& rhs) const;
  FieldElem operator-(const FieldElem& rhs) const;
  FieldElem operator*(const FieldElem& rhs) const;
  FieldElem operator/(const FieldElem& rhs) const;  // DivideByZero on zero rhs
  FieldElem operator-() const;
  bool operator==(const FieldElem& rhs) const;
  bool operator!=(const FieldElem& rhs) const { return !(*this == rhs); }

  FieldElem inverse() const;

  std::string to_string() const;  // debug rendering, e.g. "x^2+2x+1"

 private:
  FieldElem(Field f, std::vector<std::int64_t> coeffs)
      : field_(std::move(f)), coeffs_(std::move(coeffs)) {}
  Field field_;
  std::vector<std::int64_t> coeffs_;
  friend class Field;
  friend FieldElem pow(const FieldElem&, std::int64_t);
};

/// a^k with square-and-multiply; pow(a, 0) = 1, negative k inverts first.
/// Throws DivideByZero for 0 raised to a negative power.
FieldElem pow(const FieldElem& a, std::int64_t k);

/// Multiplicative order; a must be nonzero.
std::int64_t multiplicative_order(const FieldElem& a);

/// First generator of the unit group in enumeration order (see
/// Field::generator).
FieldElem find_generator(const Field& f);

/// A non-square in odd-size fields: the canonical generator itself. Throws
/// EvenCharacteristic when |f| is even.
FieldElem find_nonsquare(const Field& f);

}  // namespace psl2rc
