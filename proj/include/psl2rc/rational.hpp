#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psl2rc/chartab.hpp"

namespace psl2rc {

/// Outcome of matching q against the congruence cases of the count
/// classifier, evaluated in written order with first match winning. Cases
/// are not mutually exclusive; every other matching case is listed in
/// conflicts.
struct PredictedCase {
  std::string case_id;  // "1", "2a", "2b", "2c", "3", "4a", "4b", "5"
  int rc = 0;           // the count the matched case asserts
  std::vector<std::string> conflicts;  // other matching case ids
};

/// Census result for one table: how many columns (classes) and rows
/// (characters) are entirely rational, plus cross-checks. Nothing here
/// throws on disagreement; discrepancies carry the findings.
struct RCReport {
  std::int64_t q = 0;  // 0 when the table was ingested from a file
  std::string group_name;
  Int group_order;
  int n_rational_classes = 0;
  int n_rational_characters = 0;
  std::vector<std::string> rational_class_labels;
  std::vector<std::string> rational_character_labels;
  std::optional<PredictedCase> predicted;
  std::optional<int> oracle_count;
  std::vector<std::string> discrepancies;  // equality/prediction/oracle/validation failures
  std::vector<std::string> notes;          // informational remarks

  bool counts_equal() const { return n_rational_classes == n_rational_characters; }
};

struct CensusOptions {
  std::int64_t oracle_cap = kDefaultOracleCap;
  bool use_oracle = true;
};

/// Labels of classes whose entire table column is rational.
std::vector<std::string> rational_classes(const CharTable& t);

/// Labels of characters whose entire table row is rational.
std::vector<std::string> rational_characters(const CharTable& t);

/// Generic grid scans (used for ingested tables as well).
std::vector<std::size_t> rational_column_indices(const std::vector<std::vector<Cyc>>& values);
std::vector<std::size_t> rational_row_indices(const std::vector<std::vector<Cyc>>& values);

/// First matching congruence case for prime power q (NoCaseMatched if none,
/// which should be impossible).
PredictedCase predict_rc(std::int64_t q);

/// Builds and validates the table for q, scans both directions, attaches the
/// predicted case and (within the cap, if enabled) the element-level oracle
/// count. Discrepancies are reported, never asserted.
RCReport rc_census(std::int64_t q, const CensusOptions& options = {});

struct LemmaClassReport {
  std::string table_label;
  std::int64_t size = 0;
  int elt_order = 1;
  bool element_rational = false;
  bool column_rational = false;
};

/// Per-class comparison of element-level rationality (power maps vs
/// conjugacy, exhaustive) against column-level rationality of the matching
/// table column. Matching uses (size, element order, trace-up-to-sign) with
/// a conjugacy-search fallback when that key is ambiguous.
struct LemmaReport {
  std::int64_t q = 0;
  std::vector<LemmaClassReport> classes;
  std::vector<std::string> mismatches;
};

LemmaReport lemma_equivalence_check(std::int64_t q, std::int64_t oracle_cap = kDefaultOracleCap);

struct VerifySummary {
  std::vector<RCReport> reports;  // ascending q
  std::vector<std::string> equality_failures;
  std::vector<std::string> prediction_mismatches;
  std::vector<std::string> oracle_mismatches;
};

/// Runs rc_census over each q (must all be prime powers), optionally on a
/// worker pool; results are aggregated in ascending q order regardless of
/// completion order.
VerifySummary verify_range(std::vector<std::int64_t> qs, int jobs = 1,
                           const CensusOptions& options = {});

}  // namespace psl2rc
