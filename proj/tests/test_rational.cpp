#include "psl2rc/rational.hpp"

#include <algorithm>

#include "doctest.h"

using namespace psl2rc;

namespace {

const std::vector<std::int64_t> kPrimePowersTo64 = {2,  3,  4,  5,  7,  8,  9,  11, 13,
                                                    16, 17, 19, 23, 25, 27, 29, 31, 32,
                                                    37, 41, 43, 47, 49, 53, 59, 61, 64};

}  // namespace

TEST_CASE("rational class labels at anchor values of q") {
  CHECK(rational_classes(build_char_table(4)) == std::vector<std::string>{"I", "N", "S(1)"});
  CHECK(rational_classes(build_char_table(13)) ==
        std::vector<std::string>{"I", "S(1)", "S(2)", "S(3)"});
  CHECK(rational_classes(build_char_table(27)) == std::vector<std::string>{"I", "T(7)"});
}

TEST_CASE("rational character labels at anchor values of q") {
  CHECK(rational_characters(build_char_table(27)) ==
        std::vector<std::string>{"psi_1", "psi_q"});
  auto chars9 = rational_characters(build_char_table(9));
  CHECK(chars9.size() == 5);
  CHECK(std::find(chars9.begin(), chars9.end(), "psi_(q+1)^(2)") != chars9.end());
  CHECK(rational_characters(build_char_table(13)) ==
        std::vector<std::string>{"psi_1", "psi_q", "psi_(q+1)^(2)", "psi_(q+1)^(4)"});
}

TEST_CASE("case prediction") {
  PredictedCase c27 = predict_rc(27);
  CHECK(c27.case_id == "1");
  CHECK(c27.rc == 2);
  CHECK(c27.conflicts.empty());

  PredictedCase c23 = predict_rc(23);
  CHECK(c23.case_id == "4b");
  CHECK(c23.rc == 5);

  PredictedCase c5 = predict_rc(5);
  CHECK(c5.case_id == "2c");
  CHECK(c5.rc == 3);
  CHECK(c5.conflicts == std::vector<std::string>{"3"});

  PredictedCase c25 = predict_rc(25);
  CHECK(c25.case_id == "5");
  CHECK(c25.rc == 7);

  PredictedCase c7 = predict_rc(7);
  CHECK(c7.case_id == "2b");
  CHECK(c7.rc == 3);
  CHECK(c7.conflicts == std::vector<std::string>{"3"});
}

TEST_CASE("every prime power up to 64 matches some case") {
  for (std::int64_t q : kPrimePowersTo64) CHECK_NOTHROW(predict_rc(q));
  try {
    predict_rc(6);
    FAIL("expected NotPrimePower");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotPrimePower);
  }
}

TEST_CASE("census counts at anchor values") {
  RCReport r8 = rc_census(8);
  CHECK(r8.n_rational_classes == 3);
  CHECK(r8.n_rational_characters == 3);
  RCReport r23 = rc_census(23);
  CHECK(r23.n_rational_classes == 5);
  CHECK(r23.n_rational_characters == 5);
  RCReport r25 = rc_census(25);
  CHECK(r25.n_rational_classes == 7);
  CHECK(r25.n_rational_characters == 7);
}

TEST_CASE("census carries the oracle count when in range") {
  RCReport r = rc_census(7);
  REQUIRE(r.oracle_count.has_value());
  CHECK(*r.oracle_count == 4);

  CensusOptions no_oracle;
  no_oracle.use_oracle = false;
  CHECK(!rc_census(7, no_oracle).oracle_count.has_value());

  CensusOptions tiny_cap;
  tiny_cap.oracle_cap = 10;
  CHECK(!rc_census(7, tiny_cap).oracle_count.has_value());
}

TEST_CASE("census notes the case overlap at q = 5 and flags the mismatch at q = 7") {
  RCReport r5 = rc_census(5);
  CHECK(r5.counts_equal());
  CHECK(r5.n_rational_classes == 3);
  CHECK(!r5.notes.empty());
  CHECK(std::none_of(r5.discrepancies.begin(), r5.discrepancies.end(), [](const std::string& d) {
    return d.find("prediction mismatch") != std::string::npos;
  }));

  RCReport r7 = rc_census(7);
  CHECK(r7.counts_equal());
  CHECK(r7.n_rational_classes == 4);
  CHECK(std::any_of(r7.discrepancies.begin(), r7.discrepancies.end(), [](const std::string& d) {
    return d.find("prediction mismatch") != std::string::npos;
  }));
}

TEST_CASE("element-level and column-level rationality coincide per class") {
  for (std::int64_t q : {5, 7, 9}) {
    LemmaReport report = lemma_equivalence_check(q);
    CHECK(report.mismatches.empty());
    CHECK(report.classes.size() == (q % 2 == 0 ? q + 1 : (q + 5) / 2));
    for (const auto& cls : report.classes) CHECK(cls.element_rational == cls.column_rational);
  }
}

TEST_CASE("structurally rational rows and columns are always present") {
  for (std::int64_t q : kPrimePowersTo64) {
    CharTable t = build_char_table(q);
    auto classes = rational_classes(t);
    auto chars = rational_characters(t);
    CHECK(std::find(classes.begin(), classes.end(), "I") != classes.end());
    CHECK(std::find(chars.begin(), chars.end(), "psi_1") != chars.end());
    CHECK(std::find(chars.begin(), chars.end(), "psi_q") != chars.end());
    if (q % 4 == 1) {
      std::string half_split = "S(" + std::to_string((q - 1) / 4) + ")";
      CHECK(std::find(classes.begin(), classes.end(), half_split) != classes.end());
    }
    if (q % 4 == 3) {
      std::string half_nonsplit = "T(" + std::to_string((q + 1) / 4) + ")";
      CHECK(std::find(classes.begin(), classes.end(), half_nonsplit) != classes.end());
    }
  }
}

TEST_CASE("verify over an anchor set has no equality failures") {
  VerifySummary summary = verify_range({4, 8, 9, 27, 13, 23, 25});
  CHECK(summary.equality_failures.empty());
  CHECK(summary.oracle_mismatches.empty());
  CHECK(summary.prediction_mismatches.empty());
  CHECK(summary.reports.size() == 7);
  CHECK(summary.reports.front().q == 4);  // ascending order
  CHECK(summary.reports.back().q == 27);
}

TEST_CASE("verify tolerates prediction mismatches without failing equality") {
  VerifySummary summary = verify_range({5, 7});
  CHECK(summary.equality_failures.empty());
  CHECK(summary.oracle_mismatches.empty());
  CHECK(summary.prediction_mismatches.size() == 1);  // q = 7
}

TEST_CASE("verify of nothing") {
  VerifySummary summary = verify_range({});
  CHECK(summary.reports.empty());
  CHECK(summary.equality_failures.empty());
}

TEST_CASE("verify propagates invalid q") {
  try {
    verify_range({4, 6});
    FAIL("expected NotPrimePower");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotPrimePower);
  }
}

TEST_CASE("parallel verify matches serial verify") {
  std::vector<std::int64_t> qs = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19};
  VerifySummary serial = verify_range(qs, 1);
  VerifySummary parallel = verify_range(qs, 4);
  REQUIRE(serial.reports.size() == parallel.reports.size());
  for (std::size_t i = 0; i < serial.reports.size(); ++i) {
    CHECK(serial.reports[i].q == parallel.reports[i].q);
    CHECK(serial.reports[i].n_rational_classes == parallel.reports[i].n_rational_classes);
    CHECK(serial.reports[i].rational_class_labels == parallel.reports[i].rational_class_labels);
  }
}
