#include <gtest/gtest.h>

#include <random>

#include "kbfe/error.hpp"
#include "kbfe/group.hpp"
#include "oracles.hpp"

using namespace kbfe;

namespace {

Group random_finite_group(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> factors(1, 3), order(2, 6);
  std::vector<Coord> t;
  for (int i = factors(rng); i > 0; --i) t.push_back(order(rng));
  return Group(0, t);
}

Element random_element(const Group& g, std::mt19937_64& rng, Coord span = 5) {
  std::uniform_int_distribution<Coord> c(-span, span);
  std::vector<Coord> v(g.dim());
  for (auto& x : v) x = c(rng);
  return g.element(v);
}

}  // namespace

TEST(GroupParse, AcceptsCommonSpellings) {
  EXPECT_EQ(Group::parse("Z^2 x Z/4 x Z/3"), Group(2, {4, 3}));
  EXPECT_EQ(Group::parse("(Z/4)^2"), Group(0, {4, 4}));
  EXPECT_EQ(Group::parse("z/4^2"), Group(0, {4, 4}));
  EXPECT_EQ(Group::parse("Z"), Group(1, {}));
  EXPECT_EQ(Group::parse(" Z x Z/2 "), Group(1, {2}));
  EXPECT_EQ(Group::parse("0"), Group(0, {}));
}

TEST(GroupParse, RejectsMalformedText) {
  EXPECT_THROW(Group::parse("Z/0"), ParseError);
  EXPECT_THROW(Group::parse("Q"), ParseError);
  EXPECT_THROW(Group::parse("Z^2 x"), ParseError);
  EXPECT_THROW(Group::parse(""), ParseError);
}

TEST(GroupParse, StrRoundTrips) {
  for (const char* s : {"Z^2 x Z/4 x Z/3", "Z/9", "Z", "Z/2 x Z/2"}) {
    const Group g = Group::parse(s);
    EXPECT_EQ(Group::parse(g.str()), g) << s;
  }
}

TEST(GroupArithmetic, ReducesTorsionCoordinates) {
  const Group g(1, {4});
  EXPECT_EQ(g.element({3, 7}).coords(), (std::vector<Coord>{3, 3}));
  EXPECT_EQ(g.element({-1, -1}).coords(), (std::vector<Coord>{-1, 3}));
  EXPECT_EQ(g.neg(g.element({2, 1})).coords(), (std::vector<Coord>{-2, 3}));
  EXPECT_EQ(g.scale(3, g.element({1, 3})).coords(), (std::vector<Coord>{3, 1}));
  EXPECT_THROW(g.element({1}), InvalidArgument);
}

TEST(GroupArithmetic, AbelianGroupLaws) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Group g(trial % 3, {static_cast<Coord>(2 + trial % 5), 4});
    const Element x = random_element(g, rng), y = random_element(g, rng), z = random_element(g, rng);
    EXPECT_EQ(g.add(x, y), g.add(y, x));
    EXPECT_EQ(g.add(g.add(x, y), z), g.add(x, g.add(y, z)));
    EXPECT_EQ(g.add(x, g.neg(x)), g.zero());
    EXPECT_EQ(g.sub(x, y), g.add(x, g.neg(y)));
    EXPECT_EQ(g.scale(2, x), g.add(x, x));
  }
}

TEST(GroupOrder, FiniteAndInfinite) {
  EXPECT_EQ(Group(0, {4, 4}).order(), 16u);
  EXPECT_EQ(Group(0, {}).order(), 1u);
  EXPECT_THROW(Group(1, {}).order(), InvalidArgument);
}

TEST(Cosets, CountsMatchBruteForce) {
  for (const auto& g : oracle::groups_up_to_16()) {
    EXPECT_EQ(g.coset_count(2), oracle::cosets(g, 2).size()) << g.str();
    EXPECT_EQ(g.coset_count(4), oracle::cosets(g, 4).size()) << g.str();
  }
  EXPECT_EQ(Group(2, {4, 3}).coset_count(2), 8u);
  EXPECT_EQ(Group(2, {4, 3}).coset_count(4), 64u);
}

TEST(Cosets, IndexIsConstantExactlyOnBruteForceCosets) {
  for (const auto& g : oracle::groups_up_to_16())
    for (int m : {2, 4}) {
      for (const auto& [rep, members] : oracle::cosets(g, m)) {
        const CosetIndex c = g.coset_index(rep, m);
        for (const auto& x : members) EXPECT_EQ(g.coset_index(x, m), c) << g.str() << " " << x.str();
        EXPECT_EQ(g.coset_index(g.representative(c), m), c);
      }
      // Distinct brute-force cosets get distinct labels.
      std::set<CosetIndex> labels;
      for (const auto& [rep, members] : oracle::cosets(g, m)) labels.insert(g.coset_index(rep, m));
      EXPECT_EQ(labels.size(), g.coset_count(m));
    }
}

TEST(Cosets, InImageMatchesBruteForce) {
  for (const auto& g : oracle::groups_up_to_16())
    for (int m : {2, 4}) {
      const auto img = oracle::image(g, m);
      for (const auto& x : oracle::all_elements(g)) EXPECT_EQ(g.in_image(x, m), img.contains(x)) << g.str();
    }
}

TEST(Cosets, OrdinalFollowsCosetsOrder) {
  const Group g(1, {4, 2});
  const auto cs = g.cosets(4);
  for (std::size_t i = 0; i < cs.size(); ++i) EXPECT_EQ(g.coset_ordinal(cs[i]), i);
  EXPECT_TRUE(std::is_sorted(cs.begin(), cs.end()));
}

TEST(Cosets, DoublingOntoExactlyForOddOrder) {
  for (const auto& g : oracle::groups_up_to_16())
    EXPECT_EQ(g.doubling_onto(), oracle::image(g, 2).size() == g.order()) << g.str();
  EXPECT_FALSE(Group(1, {}).doubling_onto());
}

TEST(SubgroupProperty, MembershipMatchesEnumeration) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> ngen(0, 3);
  for (int trial = 0; trial < 150; ++trial) {
    const Group g = random_finite_group(rng);
    std::vector<Element> gens;
    for (int i = ngen(rng); i > 0; --i) gens.push_back(random_element(g, rng));
    const Subgroup s(g, gens);
    const auto ref = oracle::closure(g, gens);
    for (const auto& x : oracle::all_elements(g)) EXPECT_EQ(s.contains(x), ref.contains(x)) << g.str();
    EXPECT_EQ(s.enumerate().size(), ref.size());
  }
}

TEST(SubgroupProperty, QuotientOrderTwoMatchesEnumeration) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> ngen(0, 3);
  for (int trial = 0; trial < 150; ++trial) {
    const Group g = random_finite_group(rng);
    std::vector<Element> gens;
    for (int i = ngen(rng); i > 0; --i) gens.push_back(random_element(g, rng));
    const Subgroup s(g, gens);
    const auto ref = oracle::closure(g, gens);
    bool has2 = false;
    for (const auto& x : oracle::all_elements(g))
      if (!ref.contains(x) && ref.contains(g.scale(2, x))) has2 = true;
    EXPECT_EQ(s.quotient_has_order2(), has2) << g.str();
  }
}

TEST(Subgroup, InfiniteGroupMembership) {
  const Group g(2, {4});
  const Subgroup s(g, {g.element({2, 0, 0}), g.element({1, 3, 2})});
  EXPECT_TRUE(s.contains(g.element({3, 3, 2})));
  EXPECT_TRUE(s.contains(g.element({0, 6, 0})));   // 2 * (1,3,2) - (2,0,0)
  EXPECT_FALSE(s.contains(g.element({1, 0, 0})));
  EXPECT_FALSE(s.contains(g.element({0, 3, 0})));
  EXPECT_TRUE(s.quotient_has_order2());
}

TEST(Subgroup, QuotientInvariants) {
  const Group g(0, {9});
  const Subgroup s(g, {g.element({3})});
  const auto inv = s.quotient_invariants();
  ASSERT_EQ(inv.size(), 1u);
  EXPECT_EQ(inv[0], 3);
  EXPECT_FALSE(s.quotient_has_order2());

  const Group z(1, {});
  const auto free_inv = Subgroup(z, {}).quotient_invariants();
  ASSERT_EQ(free_inv.size(), 1u);
  EXPECT_EQ(free_inv[0], 0);
}

TEST(Domain, IndexRoundTrips) {
  for (const Domain& d : {Domain::box(Group(2, {3}), 2), Domain::full(Group(0, {4, 2})),
                          Domain::box(Group(1, {}), std::vector<Coord>{0}), Domain::box(Group(2, {}), {1, 3})}) {
    const auto pts = d.elements();
    ASSERT_EQ(pts.size(), d.size());
    EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      EXPECT_EQ(d.at(i), pts[i]);
      EXPECT_EQ(d.index_of(pts[i]), i);
      EXPECT_TRUE(d.contains(d.group().neg(pts[i])));
    }
  }
  EXPECT_EQ(Domain::box(Group(2, {3}), 2).size(), 75u);
}

TEST(Domain, OutsidePointsAndValidation) {
  const Group g(1, {2});
  const Domain d = Domain::box(g, 3);
  EXPECT_FALSE(d.index_of(g.element({4, 0})).has_value());
  EXPECT_THROW(Domain::full(g), InvalidArgument);
  EXPECT_THROW(Domain::box(g, -1), InvalidArgument);
  EXPECT_TRUE(Domain::natural(Group(0, {5}), 3).is_full());
}

TEST(PointIndex, CombineAgreesWithGroupArithmetic) {
  const Domain d = Domain::box(Group(1, {4}), 3);
  const PointIndex p(d);
  const Group& g = d.group();
  for (std::size_t x = 0; x < d.size(); ++x)
    for (std::size_t y = 0; y < d.size(); ++y)
      for (Coord a : {-2, -1, 1, 2})
        for (Coord b : {-1, 0, 1}) {
          const Element e = g.add(g.scale(a, d.at(x)), g.scale(b, d.at(y)));
          const auto want = d.index_of(e);
          const auto got = p.combine(x, a, y, b);
          EXPECT_EQ(got, want ? static_cast<std::int64_t>(*want) : -1);
        }
}
