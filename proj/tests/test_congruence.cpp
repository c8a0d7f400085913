#include "doctest.h"

#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "zslab/congruence.hpp"
#include "zslab/modmath.hpp"

using namespace zslab;
using boost::multiprecision::cpp_int;

namespace {

// exact binomial, the reference for the mod-p path
cpp_int exact_binom(unsigned a, unsigned b) {
  if (b > a) return 0;
  cpp_int r = 1;
  for (unsigned i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

}  // namespace

TEST_SUITE("congruence") {

TEST_CASE("binom_mod_p examples") {
  CHECK(binom_mod_p(9, 2, 5) == 1);  // 36 mod 5, matches (-1)^2
  CHECK(binom_mod_p(9, 3, 5) == 4);  // 84 mod 5
  CHECK(binom_mod_p(3, 7, 5) == 0);
  CHECK(binom_mod_p(0, 0, 7) == 1);
  CHECK_THROWS_AS(binom_mod_p(10, 2, 6), std::invalid_argument);
  CHECK_THROWS_AS(binom_mod_p(10, 2, 1), std::invalid_argument);
}

TEST_CASE("binom_mod_p agrees with exact binomials up to 300") {
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L})
    for (unsigned a = 0; a <= 300; a += 7)
      for (unsigned b = 0; b <= a + 5; b += 3)
        CHECK(binom_mod_p(a, b, p) == static_cast<long>(exact_binom(a, b) % p));
}

TEST_CASE("Pascal identity mod p") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 300; ++t) {
    long p = std::vector<long>{3, 5, 7, 13, 31}[rng() % 5];
    unsigned n = 1 + rng() % 600, i = 1 + rng() % 600;
    long lhs = binom_mod_p(n, i, p);
    long rhs = (binom_mod_p(n - 1, i, p) + binom_mod_p(n - 1, i - 1, p)) % p;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("binom(2p-1, h) is (-1)^h mod p") {
  for (long p = 2; p <= 97; ++p) {
    if (!is_prime(p)) continue;
    for (long h = 0; h <= p - 1; ++h)
      CHECK(binom_mod_p(2 * p - 1, h, p) == (h % 2 == 0 ? 1 : p - 1));
  }
}

TEST_CASE("build_system rows for p=5") {
  CongruenceSystem sys = build_system(5, 2);
  REQUIRE(sys.a.size() == 2);
  CHECK(sys.a[0] == std::vector<long>{1, 1, 1});  // C(10,0), C(2,0), C(1,0)
  CHECK(sys.a[1] == std::vector<long>{0, 2, 1});  // C(10,1)=10, C(2,1), C(1,1)

  CongruenceSystem k1 = build_system(5, 1);
  REQUIRE(k1.a.size() == 1);
  CHECK(k1.a[0] == std::vector<long>{1, 1});  // C(9,0), C(0,0)

  CHECK(build_system(7, 1).a[0] == std::vector<long>{1, 1});
  CHECK_THROWS_AS(build_system(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_system(5, 5), std::invalid_argument);
  CHECK_THROWS_AS(build_system(6, 2), std::invalid_argument);
}

TEST_CASE("elimination solutions") {
  SystemSolution s52 = solve_by_elimination(build_system(5, 2));
  CHECK(s52.unique);
  CHECK(s52.values == std::vector<long>{1, 3});

  SystemSolution s51 = solve_by_elimination(build_system(5, 1));
  CHECK(s51.unique);
  CHECK(s51.values == std::vector<long>{4});

  CHECK(solve_by_elimination(build_system(7, 3)).values == closed_form(7, 3).values);
}

TEST_CASE("closed form") {
  SystemSolution s = closed_form(5, 2);
  CHECK(s.values == std::vector<long>{1, 3});  // (-1)^2 C(2,2), (-1)^1 C(2,1) = -2
  CHECK(closed_form(7, 1).values == std::vector<long>{6});  // k=1: -1 mod p
  CHECK(closed_form(11, 1).values == std::vector<long>{10});
  CHECK(closed_form(7, 3).values == std::vector<long>{6, 3, 4});
}

TEST_CASE("elimination equals closed form for p <= 31") {
  for (long p = 2; p <= 31; ++p) {
    if (!is_prime(p)) continue;
    for (int k = 1; k <= p - 1; ++k) {
      SystemSolution lhs = solve_by_elimination(build_system(p, k));
      SystemSolution rhs = closed_form(p, k);
      REQUIRE(lhs.unique);
      REQUIRE(lhs.values == rhs.values);
    }
  }
}

TEST_CASE("closed-form values satisfy the system row by row") {
  for (long p = 2; p <= 31; ++p) {
    if (!is_prime(p)) continue;
    for (int k = 1; k <= p - 1; ++k) {
      CongruenceSystem sys = build_system(p, k);
      SystemSolution sol = closed_form(p, k);
      for (int t = 0; t < k; ++t) {
        long acc = sys.a[t][0];
        for (int s = 1; s <= k; ++s) acc = (acc + sys.a[t][s] * sol.values[s - 1]) % p;
        CHECK(acc % p == 0);
      }
    }
  }
}

TEST_CASE("elimination handles degenerate hand-built systems") {
  // singular but consistent variable block: unique must be false
  CongruenceSystem singular;
  singular.p = 5;
  singular.k = 2;
  singular.a = {{0, 1, 1}, {0, 2, 2}};
  SystemSolution sol = solve_by_elimination(singular);
  CHECK(!sol.unique);
  for (int t = 0; t < 2; ++t) {
    long acc = singular.a[t][0];
    for (int s = 1; s <= 2; ++s) acc = (acc + singular.a[t][s] * sol.values[s - 1]) % 5;
    CHECK(acc == 0);
  }

  // inconsistent system surfaces as an error
  CongruenceSystem bad;
  bad.p = 5;
  bad.k = 2;
  bad.a = {{1, 0, 0}, {0, 0, 0}};
  CHECK_THROWS_AS(solve_by_elimination(bad), std::runtime_error);
}

TEST_CASE("invariant formulas") {
  CHECK(davenport_formula(GroupSpec({5, 5})) == 9);
  CHECK(davenport_formula(GroupSpec({5, 5, 5})) == 13);
  CHECK(davenport_formula(GroupSpec({2, 2, 2})) == 4);
  CHECK(davenport_formula(GroupSpec({6, 6})) == 11);       // rank 2
  CHECK(davenport_formula(GroupSpec({2, 4, 8})) == 12);    // 2-group
  CHECK_THROWS_AS(davenport_formula(GroupSpec({6, 6, 6})), std::invalid_argument);

  CHECK(eta_formula(GroupSpec({5, 5})) == 13);
  CHECK(eta_formula(GroupSpec({3, 3})) == 7);
  CHECK_THROWS_AS(eta_formula(GroupSpec({5, 5, 5})), std::invalid_argument);
  CHECK_THROWS_AS(eta_formula(GroupSpec({5})), std::invalid_argument);
  CHECK_THROWS_AS(eta_formula(GroupSpec({2, 4})), std::invalid_argument);

  CHECK(s_leq_formula(5, 5, 2) == 11);
  CHECK(s_leq_formula(2, 2, 1) == 4);
  CHECK(s_leq_formula(1, 7, 0) == 7);
  CHECK_THROWS_AS(s_leq_formula(5, 5, 5), std::invalid_argument);
  CHECK_THROWS_AS(s_leq_formula(3, 5, 0), std::invalid_argument);
}

}  // TEST_SUITE
