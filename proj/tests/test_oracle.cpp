#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kbfe/check.hpp"
#include "kbfe/oracle.hpp"
#include "oracles.hpp"

using namespace kbfe;

namespace {

std::vector<int> signs_of(const FuncTable& t) {
  std::vector<int> v;
  for (const auto& x : t.values()) v.push_back(x.sign_of());
  return v;
}

std::set<std::pair<std::vector<int>, std::vector<int>>> census_set(const SignSolutionCensus& c) {
  std::set<std::pair<std::vector<int>, std::vector<int>>> out;
  for (const auto& p : c.pairs) out.insert({p.a, p.b});
  return out;
}

}  // namespace

TEST(Builtins, CounterexampleTables) {
  const auto [f, g] = builtin_counterexample();
  EXPECT_EQ(f.group(), Group(0, {4, 4}));
  EXPECT_EQ(f.kind(), Kind::sign);
  const Group& grp = f.group();
  EXPECT_EQ(f.at(grp.element({1, 3})).sign_of(), -1);
  EXPECT_EQ(f.at(grp.element({1, 1})).sign_of(), 1);
  EXPECT_EQ(g.at(grp.element({1, 1})).sign_of(), -1);
  EXPECT_EQ(g.at(grp.element({1, 3})).sign_of(), 1);
}

TEST(Builtins, OddQuadraticTable) {
  const FuncTable f = builtin_odd_quadratic(3);
  EXPECT_EQ(f.size(), 49u);
  EXPECT_EQ(f.at(f.group().element({-3, 1})).sign_of(), -1);
  EXPECT_EQ(f.at(f.group().element({2, 1})).sign_of(), 1);
  EXPECT_THROW(builtin_odd_quadratic(0), InvalidArgument);
}

TEST(SignCensus, Z4SquaredRegression) {
  const SignSolutionCensus c = enum_sign_solutions(Group(0, {4, 4}));
  EXPECT_EQ(c.pairs.size(), 64u);
  EXPECT_EQ(c.elements.size(), 16u);
  const auto [f, g] = builtin_counterexample();
  EXPECT_TRUE(census_set(c).contains({signs_of(f), signs_of(g)}));
  bool some_not_x2 = false;
  for (const auto& p : c.pairs) {
    EXPECT_TRUE(p.a_constant_on_x4);
    EXPECT_TRUE(p.b_constant_on_x4);
    some_not_x2 = some_not_x2 || !p.a_constant_on_x2 || !p.b_constant_on_x2;
    EXPECT_TRUE(check_sign_eq26(sign_table(c.group, p.a), sign_table(c.group, p.b)).holds);
  }
  EXPECT_TRUE(some_not_x2);
}

TEST(SignCensus, OrderingIsLexicographicWithPlusFirst) {
  const SignSolutionCensus c = enum_sign_solutions(Group(0, {4, 4}));
  for (std::size_t i = 1; i < c.pairs.size(); ++i) {
    auto key = [](const SignPair& p) {
      std::vector<int> k;
      for (int v : p.a) k.push_back(-v);
      for (int v : p.b) k.push_back(-v);
      return k;
    };
    EXPECT_LT(key(c.pairs[i - 1]), key(c.pairs[i]));
  }
  EXPECT_EQ(c.pairs.front().a, std::vector<int>(16, 1));
  EXPECT_EQ(c.pairs.front().b, std::vector<int>(16, 1));
}

TEST(SignCensus, MatchesUnprunedBruteForce) {
  for (const auto& g : {Group(0, {2, 2}), Group(0, {4}), Group(0, {2, 4}), Group(0, {8}), Group(0, {3}), Group(0, {2, 2, 2}),
                        Group(0, {6}), Group(0, {}), Group(0, {2})}) {
    const SignSolutionCensus c = enum_sign_solutions(g);
    EXPECT_EQ(census_set(c), oracle::brute_sign_solutions(g)) << g.str();
  }
}

TEST(SignCensus, RelationsDescribeEachCoset) {
  const SignSolutionCensus c = enum_sign_solutions(Group(0, {2, 4}));
  const Group& g = c.group;
  const auto cosets = g.cosets(2);
  for (const auto& p : c.pairs) {
    ASSERT_EQ(p.relation.size(), cosets.size());
    for (std::size_t k = 0; k < cosets.size(); ++k) {
      std::set<int> products;
      for (std::size_t i = 0; i < c.elements.size(); ++i)
        if (g.coset_index(c.elements[i], 2) == cosets[k]) products.insert(p.a[i] * p.b[i]);
      const CosetRelation want = products.size() > 1   ? CosetRelation::mixed
                                 : *products.begin() == 1 ? CosetRelation::same
                                                          : CosetRelation::opposite;
      EXPECT_EQ(p.relation[k], want);
    }
  }
}

TEST(SignCensus, Limits) {
  EXPECT_THROW(enum_sign_solutions(Group(1, {})), InvalidArgument);
  EXPECT_THROW(enum_sign_solutions(Group(0, {4, 4}), 8), InvalidArgument);
  EXPECT_THROW(enum_sign_solutions(Group(0, {4, 4}), 256, 10), BudgetExceeded);
}

TEST(RestrictedKb, MatchesBruteForceOnSmallGroups) {
  const std::vector<double> logs = {-1.0, 0.0, 1.0};
  for (const auto& g : {Group(0, {}), Group(0, {2}), Group(0, {3})}) {
    std::set<std::pair<std::vector<int>, std::vector<int>>> got;
    const auto r = enum_restricted_kb(g, default_grid(), 1u << 20, 0, [&](std::span<const int> f, std::span<const int> h) {
      got.insert({std::vector<int>(f.begin(), f.end()), std::vector<int>(h.begin(), h.end())});
    });
    const auto want = oracle::brute_grid_solutions(g, logs);
    EXPECT_EQ(got, want) << g.str();
    EXPECT_EQ(r.solutions, want.size());
  }
}

TEST(RestrictedKb, WiderGridMatchesBruteForce) {
  std::vector<Value> grid;
  std::vector<double> logs;
  for (int k = -2; k <= 2; ++k) {
    grid.push_back(Value::exp(Real(k, 2)));
    logs.push_back(k / 2.0);
  }
  const Group g(0, {2});
  std::set<std::pair<std::vector<int>, std::vector<int>>> got;
  enum_restricted_kb(g, grid, 1u << 20, 0, [&](std::span<const int> f, std::span<const int> h) {
    got.insert({std::vector<int>(f.begin(), f.end()), std::vector<int>(h.begin(), h.end())});
  });
  EXPECT_EQ(got, oracle::brute_grid_solutions(g, logs));
}

TEST(RestrictedKb, AsymmetricGridStillMatches) {
  const std::vector<Value> grid = {Value::one(), Value::exp(Real(1)), Value::exp(Real(3))};
  const Group g(0, {3});
  std::set<std::pair<std::vector<int>, std::vector<int>>> got;
  enum_restricted_kb(g, grid, 1u << 20, 0, [&](std::span<const int> f, std::span<const int> h) {
    got.insert({std::vector<int>(f.begin(), f.end()), std::vector<int>(h.begin(), h.end())});
  });
  EXPECT_EQ(got, oracle::brute_grid_solutions(g, {0.0, 1.0, 3.0}));
}

TEST(RestrictedKb, KeptTablesSolveTheEquation) {
  const Group g(0, {2, 2});
  const auto r = enum_restricted_kb(g, default_grid(), 1u << 20, 5);
  EXPECT_EQ(r.solutions, 81u);
  EXPECT_EQ(r.free_variables, 4u);
  EXPECT_EQ(r.combinations, 81u);
  ASSERT_EQ(r.kept.size(), 5u);
  for (const auto& [f, h] : r.kept) {
    EXPECT_TRUE(check_kb(f, h, 0.0).holds);
    EXPECT_TRUE(oracle::naive_kb(f, h).holds);
  }
}

TEST(RestrictedKb, BudgetAndArguments) {
  EXPECT_THROW(enum_restricted_kb(Group(0, {2, 2, 2}), default_grid(), 100), BudgetExceeded);
  EXPECT_THROW(enum_restricted_kb(Group(1, {}), default_grid(), 100), InvalidArgument);
  EXPECT_THROW(enum_restricted_kb(Group(0, {2}), {}, 100), InvalidArgument);
  EXPECT_THROW(enum_restricted_kb(Group(0, {2}), {Value::sign(-1)}, 100), InvalidArgument);
}

TEST(RandomForms, SynthesizeGenuineSolutions) {
  std::mt19937_64 rng(211);
  for (const auto& g : default_suite_groups()) {
    const Domain d = Domain::natural(g, 2);
    const auto [pf, pg] = synth_table(random_positive_form(g, rng), d);
    EXPECT_TRUE(oracle::naive_kb(pf, pg).holds) << g.str();
    const HermitianSolutionForm h = random_hermitian_form(g, rng);
    EXPECT_EQ(h.a, h.b);
    EXPECT_TRUE(h.a.constant_on_doubles());
    const auto [hf, hg] = synth_table(h, d);
    EXPECT_TRUE(oracle::naive_kb(hf, hg).holds) << g.str();
  }
}

TEST(RandomForms, SeededGenerationIsDeterministic) {
  const Group g(2, {4, 3});
  std::mt19937_64 a(5), b(5);
  for (int i = 0; i < 10; ++i) EXPECT_TRUE(random_positive_form(g, a) == random_positive_form(g, b));
}

TEST(Suite, DefaultSuitePasses) {
  const SuiteReport r = verify_theorem_suite(default_suite_groups(), 2, 1);
  EXPECT_TRUE(r.passed) << r.failed_invariant;
  EXPECT_TRUE(r.failed_invariant.empty());
  EXPECT_FALSE(r.checks.empty());
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Suite, SameSeedSameReport) {
  const std::vector<Group> groups = {Group(1, {2}), Group(0, {4, 4})};
  const SuiteReport a = verify_theorem_suite(groups, 2, 9), b = verify_theorem_suite(groups, 2, 9);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    EXPECT_EQ(a.checks[i].name, b.checks[i].name);
    EXPECT_EQ(a.checks[i].detail, b.checks[i].detail);
  }
}
