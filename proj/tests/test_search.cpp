#include "doctest.h"

#include <stdexcept>

#include <functional>
#include <random>
#include <set>

#include "zslab/congruence.hpp"
#include "zslab/engine.hpp"
#include "zslab/search.hpp"
#include "zslab/structure.hpp"
#include "zslab/verify.hpp"

using namespace zslab;

namespace {

SearchTask task_for(const GroupSpec& spec, int target, int forbidden, bool symmetry = true,
                    int workers = 1) {
  SearchTask t;
  t.spec = spec;
  t.target_length = target;
  t.forbidden_zero_sum_max_len = forbidden;
  t.symmetry = symmetry;
  t.workers = workers;
  return t;
}

std::set<std::string> orbit_keys(const ExtremalReport& report) {
  std::set<std::string> keys;
  for (const ExtremalOrbit& o : report.orbits) keys.insert(o.canonical.render_terms());
  return keys;
}

// every multiset of the target length, no pruning at all
void plain_enumerate(const GroupSpec& spec, int length,
                     const std::function<void(const Sequence&)>& fn) {
  std::vector<GroupElement> elems;
  GroupElement cur = zero_element(spec);
  for (int i = 0; i < spec.order(); ++i) {
    elems.push_back(cur);
    for (int j = spec.rank() - 1; j >= 0; --j) {
      if (++cur.c[j] < spec.factors()[j]) break;
      cur.c[j] = 0;
    }
  }
  std::vector<int> stack;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(stack.size()) == length) {
      Sequence s(spec);
      for (int idx : stack) s.add_term(elems[idx]);
      fn(s);
      return;
    }
    for (int idx = from; idx < spec.order(); ++idx) {
      stack.push_back(idx);
      rec(idx);
      stack.pop_back();
    }
  };
  rec(0);
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("C2xC2 extremal at k=1: the eta witness orbit") {
  GroupSpec g({2, 2});
  ExtremalReport report = enumerate_extremal(task_for(g, 3, 2));
  REQUIRE(report.exhaustive);
  REQUIRE(report.orbits.size() == 1);
  CHECK(report.orbits[0].canonical == Sequence::parse("C2xC2 | (0,1) (1,0) (1,1)"));
  CHECK(report.orbits[0].orbit_size == 1);
}

TEST_CASE("exhaustiveness cross-check against plain enumeration on C3xC3") {
  GroupSpec g({3, 3});
  // k = 1: length 5, forbidden 4
  ExtremalReport report = enumerate_extremal(task_for(g, 5, 4));
  REQUIRE(report.exhaustive);

  std::set<std::string> expected;
  plain_enumerate(g, 5, [&](const Sequence& s) {
    if (!has_short_zero_sum(s, 4)) expected.insert(canonicalize(s).render_terms());
  });
  CHECK(orbit_keys(report) == expected);
  CHECK(!expected.empty());
}

TEST_CASE("symmetry on and off agree") {
  for (const char* name : {"C2xC2", "C3xC3"}) {
    GroupSpec g = GroupSpec::parse(name);
    int n = g.factors()[0];
    ExtremalReport on = enumerate_extremal(task_for(g, 2 * n - 1, 2 * n - 2, true));
    ExtremalReport off = enumerate_extremal(task_for(g, 2 * n - 1, 2 * n - 2, false));
    CHECK(orbit_keys(on) == orbit_keys(off));
    CHECK(on.nodes <= off.nodes);
  }
}

TEST_CASE("identical reports for different worker counts") {
  GroupSpec g({3, 3});
  ExtremalReport one = enumerate_extremal(task_for(g, 5, 4, true, 1));
  ExtremalReport three = enumerate_extremal(task_for(g, 5, 4, true, 3));
  CHECK(orbit_keys(one) == orbit_keys(three));
  CHECK(one.nodes == three.nodes);

  MaxAvoidingResult m1 = max_avoiding_length(g, 3, SearchBudget::from_env(), 1);
  MaxAvoidingResult m3 = max_avoiding_length(g, 3, SearchBudget::from_env(), 3);
  CHECK(m1.max_length == m3.max_length);
}

TEST_CASE("max_avoiding_length") {
  CHECK(max_avoiding_length(GroupSpec({3, 3}), 3).max_length == 6);  // eta(C3xC3) - 1
  CHECK(max_avoiding_length(GroupSpec({2, 2}), 2).max_length == 3);
  MaxAvoidingResult res = max_avoiding_length(GroupSpec({3, 3}), 4);
  CHECK(res.max_length == 5);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness->length() == 5);
  CHECK(!has_short_zero_sum(*res.witness, 4));

  CHECK_THROWS_AS(max_avoiding_length(GroupSpec({3, 3}), 2), std::invalid_argument);
  // below exp(G) the avoiding length is unbounded (e.g. g^[m] for any m)
  CHECK_THROWS_AS(max_avoiding_length(GroupSpec({2, 2}), 1), std::invalid_argument);
}

TEST_CASE("max search agrees with and without symmetry at C5xC5") {
  GroupSpec g({5, 5});
  SearchBudget b = SearchBudget::from_env();
  for (int forbidden = 5; forbidden <= 9; ++forbidden) {
    MaxAvoidingResult on = max_avoiding_length(g, forbidden, b, 1, true);
    MaxAvoidingResult off = max_avoiding_length(g, forbidden, b, 1, false);
    CHECK(on.max_length == off.max_length);
    CHECK(on.nodes <= off.nodes);
  }
  CHECK(max_zero_sum_free_length(g, b, 1, true).max_length ==
        max_zero_sum_free_length(g, b, 1, false).max_length);
}

TEST_CASE("max_avoiding_length is nonincreasing in the forbidden length") {
  GroupSpec g({3, 3});
  int prev = 1 << 20;
  for (int forbidden = 3; forbidden <= 6; ++forbidden) {
    int cur = max_avoiding_length(g, forbidden).max_length;
    CHECK(cur <= prev);
    prev = cur;
  }
}

TEST_CASE("davenport and eta by search") {
  CHECK(compute_davenport_by_search(GroupSpec({2, 2})) == 3);
  CHECK(compute_davenport_by_search(GroupSpec({3, 3})) == 5);
  CHECK(compute_davenport_by_search(GroupSpec({2, 2, 2})) == 4);
  CHECK(compute_davenport_by_search(GroupSpec({2, 4})) == 5);  // non-homocyclic path
  CHECK(compute_eta_by_search(GroupSpec({2, 2})) == 4);
  CHECK(compute_eta_by_search(GroupSpec({3, 3})) == 7);
}

TEST_CASE("zero-sum-free maximum matches the Davenport witness") {
  MaxAvoidingResult res = max_zero_sum_free_length(GroupSpec({3, 3}));
  CHECK(res.max_length == 4);
  REQUIRE(res.witness.has_value());
  CHECK(!shortest_nonempty_zero_sum(*res.witness).has_value());
}

TEST_CASE("enumerate_minimal_zero_sums") {
  GroupSpec g2({2, 2});
  auto reps2 = enumerate_minimal_zero_sums(g2, 3);
  REQUIRE(reps2.size() == 1);
  CHECK(reps2[0] == Sequence::parse("C2xC2 | (0,1) (1,0) (1,1)"));

  GroupSpec g3({3, 3});
  auto reps3 = enumerate_minimal_zero_sums(g3, 5);
  CHECK(!reps3.empty());
  for (const Sequence& s : reps3) {
    CHECK(is_minimal_zero_sum(s));
    CHECK(match_property_B_form(s).matched);
  }

  CHECK(enumerate_minimal_zero_sums(g3, 6).empty());  // beyond D(G)
  CHECK(enumerate_minimal_zero_sums(GroupSpec({4, 4}), 8).empty());
  CHECK(enumerate_minimal_zero_sums(GroupSpec({5, 5}), 10).empty());

  auto reps1 = enumerate_minimal_zero_sums(g3, 1);
  REQUIRE(reps1.size() == 1);
  CHECK(reps1[0] == Sequence::parse("C3xC3 | (0,0)"));

  // length-2 minimal zero-sums: the +/- pairs, one orbit over C3xC3
  auto repsPair = enumerate_minimal_zero_sums(g3, 2);
  REQUIRE(repsPair.size() == 1);
  CHECK(is_minimal_zero_sum(repsPair[0]));
}

TEST_CASE("minimal zero-sum orbits at C4xC4 length 7 against plain enumeration") {
  GroupSpec g({4, 4});
  auto reps = enumerate_minimal_zero_sums(g, 7);
  std::set<std::string> expected;
  plain_enumerate(g, 7, [&](const Sequence& s) {
    if (is_minimal_zero_sum(s)) expected.insert(canonicalize(s).render_terms());
  });
  std::set<std::string> got;
  for (const Sequence& s : reps) got.insert(s.render_terms());
  CHECK(got == expected);
  CHECK(!got.empty());
}

TEST_CASE("non-homocyclic searches run without orbit reduction") {
  GroupSpec g({2, 4});
  ExtremalReport report = enumerate_extremal(task_for(g, 5, 4));  // D-1+k at k=1
  REQUIRE(report.exhaustive);
  CHECK(!report.orbits.empty());
  for (const ExtremalOrbit& o : report.orbits) {
    CHECK(!has_short_zero_sum(o.canonical, 4));
    CHECK(o.orbit_size == 0);  // no automorphism machinery for C2xC4
  }
}

TEST_CASE("every orbit passes re-verification and is canonical") {
  GroupSpec g({3, 3});
  ExtremalReport report = enumerate_extremal(task_for(g, 6, 3));  // eta - 1 = 6, forbidden exp
  REQUIRE(report.exhaustive);
  REQUIRE(!report.orbits.empty());
  for (const ExtremalOrbit& o : report.orbits) {
    CHECK(!has_short_zero_sum(o.canonical, 3));
    CHECK(canonicalize(o.canonical) == o.canonical);
    CHECK(o.canonical.length() == 6);
  }
}

TEST_CASE("tiny target lengths, with and without workers") {
  GroupSpec g({2, 2});
  for (int workers : {1, 2}) {
    ExtremalReport empty_target = enumerate_extremal(task_for(g, 0, 1, true, workers));
    REQUIRE(empty_target.orbits.size() == 1);
    CHECK(empty_target.orbits[0].canonical.length() == 0);

    ExtremalReport singletons = enumerate_extremal(task_for(g, 1, 1, true, workers));
    REQUIRE(singletons.orbits.size() == 1);  // all nonzero singletons form one orbit
    CHECK(singletons.orbits[0].canonical == Sequence::parse("C2xC2 | (0,1)"));
  }
}

TEST_CASE("canonicalize returns the multiset-least orbit element") {
  std::mt19937_64 rng(264);
  for (const char* name : {"C3xC3", "C2xC2xC2"}) {
    GroupSpec g = GroupSpec::parse(name);
    for (int t = 0; t < 8; ++t) {
      Sequence s(g);
      for (int i = 0; i < 6; ++i) {
        std::vector<int> c(g.rank());
        for (int j = 0; j < g.rank(); ++j) c[j] = static_cast<int>(rng() % g.factors()[j]);
        s.add_term(GroupElement(std::move(c)));
      }
      Sequence canon = canonicalize(s);
      bool seen_canon = false;
      for (const Automorphism& a : all_automorphisms(g)) {
        Sequence image = apply_automorphism(s, a);
        CHECK(multiset_compare(canon, image) <= 0);
        if (image == canon) seen_canon = true;
      }
      CHECK(seen_canon);
    }
  }
}

TEST_CASE("budget handling") {
  GroupSpec g({5, 5});
  SearchBudget tiny;
  tiny.max_nodes = 10;
  SearchTask t = task_for(g, 10, 7);
  t.budget = tiny;
  ExtremalReport partial = enumerate_extremal(t);
  CHECK(!partial.exhaustive);

  CHECK_THROWS_AS(compute_davenport_by_search(g, tiny), BudgetExceeded);
}

TEST_CASE("certification respects the counting-path group-order limit") {
  // at p = 11 the lift lands in a group of order 1331 > 512: the claim_A
  // flag must stay unset instead of aborting the report
  ExtremalReport report;
  report.spec = GroupSpec({11, 11});
  report.target_length = 22;
  report.forbidden = 19;
  ExtremalOrbit orbit;
  Sequence rep(report.spec);
  rep.add_term(GroupElement({1, 0}), 10);
  rep.add_term(GroupElement({0, 1}), 10);
  rep.add_term(GroupElement({1, 1}), 2);
  orbit.canonical = rep;
  report.orbits.push_back(orbit);
  certify_orbits(report, 2);
  CHECK(report.orbits[0].checks.lemma32a == true);
  CHECK(report.orbits[0].checks.lemma32b == true);
  CHECK(report.orbits[0].checks.lemma32c == true);
  CHECK(report.orbits[0].checks.main_form == true);
  CHECK(!report.orbits[0].checks.claim_a.has_value());

  CHECK_THROWS_AS(verify_theorem(11, 2, SearchBudget::from_env()), std::invalid_argument);
}

TEST_CASE("verify_theorem pipeline as a library call") {
  VerificationVerdict v = verify_theorem(5, 3, SearchBudget::from_env());
  CHECK(v.overall);
  REQUIRE(v.claims.size() == 7);
  for (const ClaimResult& c : v.claims) CHECK(c.status == "verified");
  CHECK(v.claims.front().id == "extremal_enumeration");
  CHECK(v.claims.back().id == "congruence_system");

  CHECK_THROWS_AS(verify_theorem(5, 1, SearchBudget::from_env()), std::invalid_argument);
  CHECK_THROWS_AS(verify_theorem(9, 2, SearchBudget::from_env()), std::invalid_argument);

  SearchBudget tiny;
  tiny.max_nodes = 3;
  VerificationVerdict skipped = verify_theorem(5, 2, tiny);
  CHECK(!skipped.overall);
  bool saw_skip = false;
  for (const ClaimResult& c : skipped.claims) {
    CHECK(c.status != "refuted");
    if (c.status == "skipped_budget") saw_skip = true;
  }
  CHECK(saw_skip);
}

TEST_CASE("search preconditions") {
  CHECK_THROWS_AS(enumerate_extremal(task_for(GroupSpec({8, 8, 8}), 5, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_extremal(task_for(GroupSpec({3, 3}), 50, 3)), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_minimal_zero_sums(GroupSpec({8, 8}), 3), std::invalid_argument);
}

}  // TEST_SUITE
