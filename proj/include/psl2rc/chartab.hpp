#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psl2rc/cyclo.hpp"
#include "psl2rc/psl2.hpp"

namespace psl2rc {

enum class CharKind {
  Trivial,         // degree 1
  Steinberg,       // degree q
  PrincipalSeries, // degree q+1, parameterized by k
  DiscreteSeries,  // degree q-1, parameterized by j
  HalfPlus1,       // degree (q+1)/2 (q = 1 mod 4)
  HalfPlus2,
  HalfMinus1,      // degree (q-1)/2 (q = 3 mod 4)
  HalfMinus2,
};

struct CharLabel {
  CharKind kind = CharKind::Trivial;
  std::int64_t param = 0;  // k or j for the series rows, 0 otherwise
  std::string name;        // "psi_1", "psi_q", "psi_(q+1)^(2)", "psi_+'", ...
};

/// The exact character table of PSL2(q): classes in fixed column order,
/// characters in fixed row order, every value an exact cyclotomic number.
struct CharTable {
  std::int64_t q = 0;
  std::string group_name;
  std::int64_t group_order = 0;
  std::vector<ConjugacyClass> classes;
  std::vector<CharLabel> characters;
  std::vector<std::vector<Cyc>> values;  // [character][class]

  // For odd q: omega = (1 + r)/2 and omega_star = 1 - omega, where r is the
  // square root of q (q = 1 mod 4) or of -q (q = 3 mod 4). Rational zeros
  // for even q.
  Cyc omega;
  Cyc omega_star;

  /// Exact value; throws IndexOutOfRange.
  const Cyc& entry(std::size_t char_index, std::size_t class_index) const;
  /// Degree of the i-th character (column 0 of its row).
  Int degree(std::size_t char_index) const;
};

/// Builds the table for any prime power q >= 2 (NotPrimePower, CapExceeded).
CharTable build_char_table(std::int64_t q);

struct ValidationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Exact structural checks: sum of squared degrees, class sizes summing to
/// the group order, and both orthogonality relations (conjugation is the
/// Galois automorphism zeta -> zeta^-1). Failures are reported, not thrown.
ValidationReport validate_table(const CharTable& t);

/// Same checks for an arbitrary ingested grid.
ValidationReport validate_grid(const Int& group_order, const std::vector<Int>& class_sizes,
                               const std::vector<std::string>& class_names,
                               const std::vector<std::string>& char_names,
                               const std::vector<std::vector<Cyc>>& values);

}  // namespace psl2rc
