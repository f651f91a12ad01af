#include "psl2rc/chartab.hpp"

#include <algorithm>

#include "doctest.h"

using namespace psl2rc;

namespace {

std::size_t char_index(const CharTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.characters.size(); ++i)
    if (t.characters[i].name == name) return i;
  REQUIRE_MESSAGE(false, "no character " << name);
  return 0;
}

std::size_t class_index(const CharTable& t, const std::string& label) {
  for (std::size_t i = 0; i < t.classes.size(); ++i)
    if (t.classes[i].label == label) return i;
  REQUIRE_MESSAGE(false, "no class " << label);
  return 0;
}

}  // namespace

TEST_CASE("steinberg row at q = 4") {
  CharTable t = build_char_table(4);
  std::size_t row = char_index(t, "psi_q");
  std::vector<Cyc> expected{Cyc::from_int(4), Cyc::from_int(0), Cyc::from_int(1),
                            Cyc::from_int(-1), Cyc::from_int(-1)};
  CHECK(t.values[row] == expected);
}

TEST_CASE("omega entries at q = 5") {
  CharTable t = build_char_table(5);
  const Cyc& v = t.entry(char_index(t, "psi_+'"), class_index(t, "N"));
  Cyc omega = (Cyc::from_int(1) + sqrt_signed_q(5, 1)) * Cyc::rational(Rat(1, 2));
  CHECK(v == omega);
  CHECK(!is_rational(v).has_value());
}

TEST_CASE("half-degree signs at q = 7") {
  CharTable t = build_char_table(7);
  CHECK(t.entry(char_index(t, "psi_-'"), class_index(t, "T(1)")) == Cyc::from_int(1));
  CHECK(t.entry(char_index(t, "psi_q"), class_index(t, "T(1)")) == Cyc::from_int(-1));
}

TEST_CASE("known rational series value at q = 13") {
  CharTable t = build_char_table(13);
  // 2 cos(pi/3) = 1
  CHECK(t.entry(char_index(t, "psi_(q+1)^(2)"), class_index(t, "S(1)")) == Cyc::from_int(1));
}

TEST_CASE("entry bounds") {
  CharTable t = build_char_table(4);
  try {
    t.entry(0, 99);
    FAIL("expected IndexOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndexOutOfRange);
  }
}

TEST_CASE("steinberg is 1 on the split family and -1 on the nonsplit family") {
  for (std::int64_t q : {4, 5, 7, 9, 13}) {
    CharTable t = build_char_table(q);
    std::size_t row = char_index(t, "psi_q");
    for (std::size_t c = 0; c < t.classes.size(); ++c) {
      if (t.classes[c].family == ConjugacyClass::Family::Split)
        CHECK(t.values[row][c] == Cyc::from_int(1));
      if (t.classes[c].family == ConjugacyClass::Family::NonSplit)
        CHECK(t.values[row][c] == Cyc::from_int(-1));
    }
  }
}

TEST_CASE("half-size split column carries only +-2 in the series rows") {
  for (std::int64_t q : {13, 17, 25, 29}) {
    CharTable t = build_char_table(q);
    std::size_t col = class_index(t, "S(" + std::to_string((q - 1) / 4) + ")");
    for (std::size_t i = 0; i < t.characters.size(); ++i) {
      if (t.characters[i].kind != CharKind::PrincipalSeries) continue;
      auto r = is_rational(t.values[i][col]);
      REQUIRE(r.has_value());
      CHECK((*r == 2 || *r == -2));
    }
  }
}

TEST_CASE("omega and omega_star sum to one") {
  for (std::int64_t q : {5, 9, 13, 7, 11, 27}) {
    CharTable t = build_char_table(q);
    CHECK(t.omega + t.omega_star == Cyc::from_int(1));
  }
  CharTable t5 = build_char_table(5);
  CHECK(t5.entry(char_index(t5, "psi_+'"), class_index(t5, "N")) +
            t5.entry(char_index(t5, "psi_+''"), class_index(t5, "N")) ==
        Cyc::from_int(1));
  CharTable t7 = build_char_table(7);
  CHECK(t7.entry(char_index(t7, "psi_-'"), class_index(t7, "N")) +
            t7.entry(char_index(t7, "psi_-''"), class_index(t7, "N")) ==
        Cyc::from_int(-1));
}

TEST_CASE("degrees") {
  CharTable t = build_char_table(9);
  CHECK(t.degree(char_index(t, "psi_1")) == 1);
  CHECK(t.degree(char_index(t, "psi_q")) == 9);
  CHECK(t.degree(char_index(t, "psi_+'")) == 5);
  Int sum = 0;
  for (std::size_t i = 0; i < t.characters.size(); ++i) sum += t.degree(i) * t.degree(i);
  CHECK(sum == 360);
}

TEST_CASE("table shape across q") {
  for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32}) {
    CharTable t = build_char_table(q);
    CHECK(t.characters.size() == t.classes.size());
    std::size_t expected = q % 2 == 0 ? q + 1 : (q + 5) / 2;
    CHECK(t.classes.size() == expected);
  }
}

TEST_CASE("validation passes on built tables") {
  CHECK(validate_table(build_char_table(4)).ok());
  CHECK(validate_table(build_char_table(13)).ok());
}

TEST_CASE("a single perturbed entry is detected") {
  CharTable t = build_char_table(4);
  t.values[1][1] = t.values[1][1] + Cyc::from_int(1);
  ValidationReport report = validate_table(t);
  CHECK(!report.ok());
  bool row_failure = std::any_of(report.failures.begin(), report.failures.end(),
                                 [](const std::string& f) {
                                   return f.find("row orthogonality") != std::string::npos;
                                 });
  CHECK(row_failure);
}

TEST_CASE("rejects non prime powers and oversized q") {
  try {
    build_char_table(6);
    FAIL("expected NotPrimePower");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotPrimePower);
  }
  try {
    build_char_table(1031);
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CapExceeded);
  }
}

TEST_CASE("degenerate small tables") {
  CharTable t2 = build_char_table(2);
  REQUIRE(t2.classes.size() == 3);  // I, N, T(1)
  CHECK(validate_table(t2).ok());
  CharTable t3 = build_char_table(3);
  REQUIRE(t3.classes.size() == 4);  // I, N, N', T(1)
  CHECK(validate_table(t3).ok());
  CHECK(t3.degree(2) == 1);  // the half-degree pair is linear here
}
