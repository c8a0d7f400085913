#include "doctest.h"

#include <stdexcept>

#include "zslab/sequence.hpp"
#include "support/rng.hpp"

using namespace zslab;

namespace {

GroupElement el(std::vector<int> c) { return GroupElement(std::move(c)); }

Sequence extremal_p5_k2() {
  return Sequence::parse("C5xC5 | (1,0)^4 (0,1)^4 (1,1)^2");
}

}  // namespace

TEST_SUITE("sequence") {

TEST_CASE("statistics of the extremal sequence") {
  Sequence s = extremal_p5_k2();
  CHECK(s.length() == 10);
  CHECK(s.height() == 4);
  CHECK(s.sigma() == el({1, 1}));  // 6 e1 + 6 e2 mod 5
  CHECK(s.multiplicity(el({1, 1})) == 2);
  CHECK(s.multiplicity(el({2, 2})) == 0);
  CHECK(s.support().size() == 3);

  Sequence empty(GroupSpec({5, 5}));
  CHECK(empty.length() == 0);
  CHECK(empty.height() == 0);
  CHECK(empty.sigma() == el({0, 0}));
}

TEST_CASE("concat and remove") {
  GroupSpec g({5, 5});
  Sequence a(g), b(g);
  a.add_term(el({1, 0}), 3);
  b.add_term(el({1, 0}), 1);
  CHECK(remove(a, b) == Sequence(g).add_term(el({1, 0}), 2));

  Sequence c(g), d(g);
  c.add_term(el({1, 0}), 2);
  d.add_term(el({0, 1}), 1);
  Sequence cd = concat(c, d);
  CHECK(cd.multiplicity(el({1, 0})) == 2);
  CHECK(cd.multiplicity(el({0, 1})) == 1);

  Sequence e1(g), e2(g);
  e1.add_term(el({1, 0}));
  e2.add_term(el({0, 1}));
  CHECK_THROWS_WITH_AS(static_cast<void>(remove(e1, e2)), doctest::Contains("(0,1)"),
                       std::invalid_argument);
}

TEST_CASE("map_hom") {
  GroupSpec g2({5, 5}), g3({5, 5, 5});
  Sequence s(g2);
  s.add_term(el({1, 0}), 4);
  Sequence lifted = map_hom(s, g3, [](const GroupElement& e) {
    return GroupElement({e.c[0], e.c[1], 1});
  });
  CHECK(lifted == Sequence(g3).add_term(el({1, 0, 1}), 4));
  CHECK(lifted.length() == s.length());

  Sequence same = map_hom(s, g2, [](const GroupElement& e) { return e; });
  CHECK(same == s);

  // projection dropping the first coordinate
  Sequence t(g3);
  t.add_term(el({1, 1, 0}), 2);
  Sequence projected = map_hom(t, g2, [](const GroupElement& e) {
    return GroupElement({e.c[1], e.c[2]});
  });
  CHECK(projected == Sequence(g2).add_term(el({1, 0}), 2));
}

TEST_CASE("parse and render") {
  Sequence s = extremal_p5_k2();
  CHECK(s.render() == "C5xC5 | (0,1)^4 (1,0)^4 (1,1)^2");
  CHECK(Sequence::parse(s.render()) == s);

  Sequence empty = Sequence::parse("C5xC5 |");
  CHECK(empty.length() == 0);
  CHECK(empty.render() == "C5xC5 |");

  CHECK_THROWS_AS(Sequence::parse("C5xC5 | (5,0)"), std::invalid_argument);
  CHECK(Sequence::parse("C5xC5 | (5,0)", Sequence::ParseMode::reduce) ==
        Sequence(GroupSpec({5, 5})).add_term(el({0, 0})));
  CHECK(Sequence::parse("C5xC5 | (-1,6)", Sequence::ParseMode::reduce) ==
        Sequence(GroupSpec({5, 5})).add_term(el({4, 1})));

  CHECK_THROWS_AS(Sequence::parse("C5xC5 | (1,0,0)"), std::invalid_argument);  // arity
  CHECK_THROWS_AS(Sequence::parse("C5xC5 | (1)"), std::invalid_argument);
  CHECK_THROWS_AS(Sequence::parse("C5xC5 | (1,0)^0"), std::invalid_argument);
  CHECK_THROWS_AS(Sequence::parse("C5xC5 | 1,0"), std::invalid_argument);
  CHECK_THROWS_AS(Sequence::parse("C5xC5 (1,0)"), std::invalid_argument);  // missing bar
}

TEST_CASE("render/parse round-trip on random sequences") {
  std::mt19937_64 rng(987);
  for (const char* name : {"C3xC3", "C5xC5", "C2xC4", "C5xC5xC5"}) {
    GroupSpec g = GroupSpec::parse(name);
    for (int t = 0; t < 50; ++t) {
      Sequence s = testrng::random_sequence(g, static_cast<int>(rng() % 12), rng);
      CHECK(Sequence::parse(s.render()) == s);
    }
  }
}

TEST_CASE("concat laws and remove round-trip") {
  std::mt19937_64 rng(55);
  for (const char* name : {"C3xC3", "C2xC4", "C5xC5xC5"}) {
    GroupSpec g = GroupSpec::parse(name);
    for (int t = 0; t < 350; ++t) {
      Sequence s = testrng::random_sequence(g, static_cast<int>(rng() % 10), rng);
      Sequence u = testrng::random_sequence(g, static_cast<int>(rng() % 10), rng);
      Sequence su = concat(s, u);
      CHECK(su.length() == s.length() + u.length());
      CHECK(su.sigma() == add(g, s.sigma(), u.sigma()));
      CHECK(remove(su, u) == s);
      CHECK(su.contains_subsequence(u));
    }
  }
}

TEST_CASE("multiset order") {
  GroupSpec g({3, 3});
  auto seq = [&](const char* text) { return Sequence::parse(text); };
  CHECK(multiset_compare(seq("C3xC3 | (0,1)"), seq("C3xC3 | (0,2)")) < 0);
  CHECK(multiset_compare(seq("C3xC3 | (0,1) (0,1)"), seq("C3xC3 | (0,1) (0,2)")) < 0);
  CHECK(multiset_compare(seq("C3xC3 | (0,1)"), seq("C3xC3 | (0,1) (0,1)")) < 0);  // prefix
  CHECK(multiset_compare(seq("C3xC3 | (0,1)^3"), seq("C3xC3 | (0,1)^2 (0,2)")) < 0);
  CHECK(multiset_compare(seq("C3xC3 | (0,1)^2"), seq("C3xC3 | (0,1)^2")) == 0);
  CHECK(multiset_compare(seq("C3xC3 | (0,2)"), seq("C3xC3 | (0,1) (0,2)")) > 0);
}

}  // TEST_SUITE
