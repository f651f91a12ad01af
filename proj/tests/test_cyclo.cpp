#include "psl2rc/cyclo.hpp"

#include <random>

#include "doctest.h"

using namespace psl2rc;

namespace {

Cyc random_cyc(std::int64_t n, std::mt19937& rng, int max_terms = 4) {
  std::uniform_int_distribution<std::int64_t> exp_dist(0, n - 1);
  std::uniform_int_distribution<int> coef_dist(-3, 3);
  std::uniform_int_distribution<int> den_dist(1, 3);
  std::uniform_int_distribution<int> terms_dist(0, max_terms);
  std::map<std::int64_t, Rat> raw;
  int terms = terms_dist(rng);
  for (int i = 0; i < terms; ++i) raw[exp_dist(rng)] += Rat(coef_dist(rng), den_dist(rng));
  return Cyc::make(n, std::move(raw));
}

}  // namespace

TEST_CASE("roots of unity at small conductors") {
  Cyc i = root_of_unity(4, 1);
  CHECK(i.conductor() == 4);
  CHECK(i * i == Cyc::from_int(-1));
  CHECK(root_of_unity(2, 1) == Cyc::from_int(-1));
  CHECK(root_of_unity(6, 2) == root_of_unity(6, 1) - Cyc::from_int(1));
  CHECK(root_of_unity(5, 0) == Cyc::from_int(1));
  CHECK(root_of_unity(1, 7) == Cyc::from_int(1));
}

TEST_CASE("power order of zeta_n is exactly n") {
  for (std::int64_t n : {2, 3, 4, 6, 8, 12, 15, 30, 105}) {
    Cyc z = root_of_unity(n, 1);
    Cyc acc = z;
    for (std::int64_t k = 1; k < n; ++k) {
      CHECK(acc != Cyc::from_int(1));
      acc = acc * z;
    }
    CHECK(acc == Cyc::from_int(1));
  }
}

TEST_CASE("geometric sums vanish") {
  for (std::int64_t n : {2, 3, 7, 12, 105}) {
    Cyc sum;
    for (std::int64_t k = 0; k < n; ++k) sum = sum + root_of_unity(n, k);
    CHECK(sum.is_zero());
  }
}

TEST_CASE("arithmetic identities") {
  CHECK((root_of_unity(4, 1) + root_of_unity(4, 3)).is_zero());
  CHECK(root_of_unity(5, 1) * root_of_unity(5, 4) == Cyc::from_int(1));
  CHECK(root_of_unity(3, 1) + root_of_unity(3, 2) == Cyc::from_int(-1));
}

TEST_CASE("mixed conductors lift to the lcm") {
  Cyc a = root_of_unity(4, 1) * root_of_unity(3, 1);
  CHECK(a == root_of_unity(12, 7));
  CHECK(a.conductor() == 12);
}

TEST_CASE("conductor cap") {
  std::int64_t saved = conductor_cap();
  set_conductor_cap(100);
  CHECK_NOTHROW(root_of_unity(99, 1));
  try {
    root_of_unity(101, 1);
    FAIL("expected ConductorOverflow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConductorOverflow);
  }
  try {
    (void)(root_of_unity(7, 1) * root_of_unity(16, 1));  // lcm 112 > 100
    FAIL("expected ConductorOverflow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConductorOverflow);
  }
  set_conductor_cap(saved);
}

TEST_CASE("galois action") {
  Cyc a = root_of_unity(5, 1) + root_of_unity(5, 4);
  CHECK(galois(a, 2) == root_of_unity(5, 2) + root_of_unity(5, 3));
  CHECK(galois(a, 1) == a);
  CHECK(galois(Cyc::rational(Rat(7, 3)), 5) == Cyc::rational(Rat(7, 3)));
  try {
    galois(root_of_unity(6, 1), 2);
    FAIL("expected NotCoprime");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotCoprime);
  }
}

TEST_CASE("galois is a ring homomorphism on random pairs") {
  std::mt19937 rng(42);
  for (std::int64_t n : {5, 8, 12, 21, 60}) {
    for (int rep = 0; rep < 20; ++rep) {
      Cyc a = random_cyc(n, rng);
      Cyc b = random_cyc(n, rng);
      std::int64_t k = 0;
      do {
        k = std::uniform_int_distribution<std::int64_t>(1, n)(rng);
      } while (std::gcd(k, n) != 1);
      CHECK(galois(a * b, k) == galois(a, k) * galois(b, k));
      CHECK(galois(a + b, k) == galois(a, k) + galois(b, k));
    }
  }
}

TEST_CASE("rationality detection") {
  auto r0 = is_rational(root_of_unity(4, 1) + root_of_unity(4, 3));
  REQUIRE(r0.has_value());
  CHECK(*r0 == 0);
  CHECK(!is_rational(root_of_unity(5, 1) + root_of_unity(5, 4)).has_value());
  auto r1 = is_rational(root_of_unity(6, 1) + root_of_unity(6, 5));
  REQUIRE(r1.has_value());
  CHECK(*r1 == 1);
}

TEST_CASE("support test matches the galois-fixed test") {
  std::mt19937 rng(2024);
  for (int rep = 0; rep < 300; ++rep) {
    std::int64_t n = std::uniform_int_distribution<std::int64_t>(1, 60)(rng);
    Cyc a = random_cyc(n, rng);
    CHECK(is_rational(a).has_value() == is_rational_galois_route(a));
  }
}

TEST_CASE("two_cos") {
  CHECK(two_cos(8, 2).is_zero());
  CHECK(two_cos(6, 1) == Cyc::from_int(1));
  CHECK(two_cos(17, 0) == Cyc::from_int(2));
  CHECK(two_cos(12, 12) == Cyc::from_int(2));
}

TEST_CASE("trig_is_rational basics") {
  CHECK(trig_is_rational(12, 3));  // cos = 0
  CHECK(!trig_is_rational(5, 1));
  CHECK(trig_is_rational(7, 7));   // cos = 1
  CHECK(trig_is_rational(12, 4));  // reduced denominator 3
  CHECK(!trig_is_rational(12, 1));
}

TEST_CASE("trig_is_rational agrees with the exact test up to n = 60") {
  for (std::int64_t n = 1; n <= 60; ++n)
    for (std::int64_t a = 1; a <= n; ++a)
      CHECK(trig_is_rational(n, a) == is_rational(two_cos(n, a)).has_value());
}

TEST_CASE("signed square roots") {
  CHECK(sqrt_signed_q(5, 2) == Cyc::from_int(5));
  Cyc g5 = sqrt_signed_q(5, 1);
  Cyc expected =
      root_of_unity(5, 1) - root_of_unity(5, 2) - root_of_unity(5, 3) + root_of_unity(5, 4);
  CHECK(g5 == expected);
  CHECK(g5 * g5 == Cyc::from_int(5));
  Cyc g7 = sqrt_signed_q(7, 1);
  CHECK(g7 * g7 == Cyc::from_int(-7));
  try {
    sqrt_signed_q(2, 1);
    FAIL("expected EvenCharacteristic");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EvenCharacteristic);
  }
}

TEST_CASE("signed square root squares to +-q for odd p <= 13, m <= 3") {
  for (std::int64_t p : {3, 5, 7, 11, 13}) {
    for (int m = 1; m <= 3; ++m) {
      Int q = 1;
      for (int i = 0; i < m; ++i) q *= p;
      Cyc s = sqrt_signed_q(p, m);
      Rat sign = (q % 4 == 1) ? Rat(1) : Rat(-1);
      CHECK(s * s == Cyc::rational(sign * Rat(q)));
    }
  }
}

TEST_CASE("canonical soundness: equality iff difference vanishes") {
  std::mt19937 rng(5);
  for (std::int64_t n : {6, 12, 35}) {
    for (int rep = 0; rep < 40; ++rep) {
      Cyc a = random_cyc(n, rng);
      Cyc b = random_cyc(n, rng);
      CHECK((a == b) == (a - b).is_zero());
    }
  }
}

TEST_CASE("minimize shrinks visible subfield support") {
  Cyc z = Cyc::make(10, {{2, Rat(1)}});  // zeta_10^2 = zeta_5
  Cyc m = minimize(z);
  CHECK(m.conductor() == 5);
  CHECK(m == z);
  Cyc one = root_of_unity(6, 3) * root_of_unity(6, 3);
  CHECK(minimize(one).conductor() == 1);
  CHECK(minimize(Cyc::rational(Rat(3, 2))) == Cyc::rational(Rat(3, 2)));
}

TEST_CASE("sums of products through the accumulator match direct evaluation") {
  // Conductors drawn from divisors of 120 so the lcm of the whole sum stays
  // bounded, as in real orthogonality sums.
  const std::vector<std::int64_t> conductors = {1, 2, 3, 4, 5, 6, 8, 10, 12, 15, 20, 24, 30, 60};
  std::mt19937 rng(77);
  for (int rep = 0; rep < 25; ++rep) {
    CycSum sum;
    Cyc direct;
    for (int i = 0; i < 6; ++i) {
      std::uniform_int_distribution<std::size_t> pick(0, conductors.size() - 1);
      std::int64_t na = conductors[pick(rng)];
      std::int64_t nb = conductors[pick(rng)];
      Cyc a = random_cyc(na, rng);
      Cyc b = random_cyc(nb, rng);
      Rat scale(std::uniform_int_distribution<int>(-2, 2)(rng));
      sum.add_product(a, b, scale);
      direct = direct + a * b * Cyc::rational(scale);
    }
    CHECK(sum.finalize() == direct);
  }
}

TEST_CASE("euler phi") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(2) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(105) == 48);
  CHECK(euler_phi(4096) == 2048);
}
