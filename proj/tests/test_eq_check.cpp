#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kbfe/check.hpp"
#include "kbfe/forms.hpp"
#include "kbfe/oracle.hpp"
#include "oracles.hpp"

using namespace kbfe;

namespace {

FuncTable with_value(const FuncTable& t, std::size_t i, Value v) {
  std::vector<Value> vals = t.values();
  vals[i] = std::move(v);
  return FuncTable(t.domain(), t.kind(), std::move(vals));
}

FuncTable to_float(const FuncTable& t) {
  std::vector<Value> vals;
  for (const auto& v : t.values()) vals.push_back(Value::from_complex(v.to_complex()));
  return FuncTable(t.domain(), t.kind(), std::move(vals));
}

void expect_witness(const CheckReport& r, const Element& x, const Element& y) {
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness->point("x"), x);
  EXPECT_EQ(*r.witness->point("y"), y);
}

}  // namespace

TEST(CheckKb, CounterexampleHoldsOnAllPairs) {
  const auto [f, g] = builtin_counterexample();
  const CheckReport r = check_kb(f, g, 0.0);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.pairs_checked, 256u);
  EXPECT_EQ(r.pairs_conceivable, 256u);
  EXPECT_DOUBLE_EQ(r.coverage(), 1.0);
  EXPECT_TRUE(oracle::naive_kb(f, g).holds);
}

TEST(CheckKb, ConstantExampleOnZ3) {
  const Domain d = Domain::full(Group(0, {3}));
  const FuncTable f = FuncTable::generate(d, Kind::positive, [](const Element&) { return Value::from_real(2.0); });
  const FuncTable g = FuncTable::generate(d, Kind::positive, [](const Element&) { return Value::from_real(0.5); });
  EXPECT_TRUE(check_kb(f, g).holds);
  const FuncTable g2 = FuncTable::generate(d, Kind::positive, [](const Element&) { return Value::from_real(0.6); });
  const CheckReport r = check_kb(f, g2);
  EXPECT_FALSE(r.holds);
  expect_witness(r, Group(0, {3}).element({0}), Group(0, {3}).element({0}));
}

TEST(CheckKb, BoxPairCountsMatchNaiveCount) {
  std::mt19937_64 rng(2);
  for (const auto& g : {Group(1, {}), Group(2, {}), Group(1, {2}), Group(2, {4, 3})}) {
    const auto [f, h] = synth_table(random_positive_form(g, rng), Domain::box(g, 2));
    const CheckReport r = check_kb(f, h, 0.0);
    const auto ref = oracle::naive_kb(f, h);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.pairs_checked, ref.checked) << g.str();
    EXPECT_EQ(r.pairs_conceivable, f.size() * f.size());
  }
}

TEST(CheckKbProperty, MutationsAgreeWithNaiveOracle) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> num(-3, 3);
  for (const auto& g : {Group(0, {4, 3}), Group(1, {2}), Group(2, {}), Group(0, {2, 2, 2})}) {
    const Domain d = Domain::natural(g, 2);
    for (int trial = 0; trial < 12; ++trial) {
      const auto [f, h] = synth_table(random_positive_form(g, rng), d);
      std::uniform_int_distribution<std::size_t> pos(0, d.size() - 1);
      const std::size_t i = pos(rng);
      const FuncTable mf = with_value(f, i, f[i] * Value::exp(Real(num(rng) == 0 ? 1 : num(rng), 5)));
      const CheckReport r = check_kb(mf, h, 0.0);
      const auto ref = oracle::naive_kb(mf, h);
      ASSERT_EQ(r.holds, ref.holds) << g.str();
      if (!ref.holds) expect_witness(r, ref.first_failure->first, ref.first_failure->second);
    }
  }
}

TEST(CheckKbProperty, ComplexMutationsAgreeWithNaiveOracle) {
  std::mt19937_64 rng(37);
  for (const auto& g : {Group(0, {4, 2}), Group(1, {3})}) {
    const Domain d = Domain::natural(g, 2);
    for (int trial = 0; trial < 10; ++trial) {
      const auto [f, h] = synth_table(random_hermitian_form(g, rng), d);
      ASSERT_TRUE(check_kb(f, h, 0.0).holds);
      std::uniform_int_distribution<std::size_t> pos(0, d.size() - 1);
      const std::size_t i = pos(rng);
      const FuncTable mh = with_value(h, i, h[i] * Value::unit(Real(1, 3)));
      const CheckReport r = check_kb(f, mh, 0.0);
      const auto ref = oracle::naive_kb(f, mh);
      ASSERT_EQ(r.holds, ref.holds);
      if (!ref.holds) expect_witness(r, ref.first_failure->first, ref.first_failure->second);
    }
  }
}

TEST(CheckKb, FloatPathUsesTolerance) {
  std::mt19937_64 rng(41);
  const Group g(1, {2});
  const auto [f, h] = synth_table(random_positive_form(g, rng), Domain::box(g, 3));
  const FuncTable ff = to_float(f), fh = to_float(h);
  EXPECT_FALSE(ff.exact());
  EXPECT_TRUE(check_kb(ff, fh, 1e-9).holds);
  const FuncTable bumped = with_value(ff, 5, ff[5] * Value::exp(Real::approx(1e-6)));
  EXPECT_FALSE(check_kb(bumped, fh, 1e-9).holds);
  EXPECT_TRUE(check_kb(bumped, fh, 1e-4).holds);
}

TEST(CheckKb, ZerosAreAllowed) {
  const auto [f, g] = builtin_vanishing();
  const CheckReport r = check_kb(f, g, 0.0);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.pairs_checked, 81u);
  const FuncTable broken = with_value(f, 1, Value::unit(Real(1, 9)));
  const CheckReport b = check_kb(broken, g, 0.0);
  const auto ref = oracle::naive_kb(broken, g);
  ASSERT_FALSE(ref.holds);
  EXPECT_FALSE(b.holds);
  expect_witness(b, ref.first_failure->first, ref.first_failure->second);
}

TEST(CheckKb, LargeExactValuesBypassPacking) {
  const Group g(1, {});
  const Real huge = Real(mpq_class("123456789012345678901/7"));
  PositiveSolutionForm form = PositiveSolutionForm::zero(g);
  form.P = QuadraticForm(g, {{huge}});
  form.l = AdditiveMap(g, {Real(1, 3)});
  const auto [f, h] = synth_table(form, Domain::box(g, 3));
  EXPECT_TRUE(check_kb(f, h, 0.0).holds);
  const FuncTable mf = with_value(f, 2, f[2] * Value::exp(Real(1, 1000000)));
  EXPECT_FALSE(check_kb(mf, h, 0.0).holds);
}

TEST(CheckKb, DifferentDomainsAreRejected) {
  const Group g(1, {});
  const auto a = FuncTable::generate(Domain::box(g, 2), Kind::positive, [](const Element&) { return Value::one(); });
  const auto b = FuncTable::generate(Domain::box(g, 3), Kind::positive, [](const Element&) { return Value::one(); });
  EXPECT_THROW(check_kb(a, b), InvalidArgument);
}

TEST(CheckKbSelf, OddQuadraticHoldsExactly) {
  const FuncTable f = builtin_odd_quadratic(8);
  const CheckReport r = check_kb_self(f, 0.0);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.equation, "f(x+y) f(x-y) = f(x)^2 f(y) f(-y)");
  EXPECT_EQ(r.pairs_checked, oracle::naive_kb(f, f).checked);
}

TEST(CheckHermitian, DetectsAsymmetry) {
  const Group g(0, {5});
  const Domain d = Domain::full(g);
  const auto chi = FuncTable::generate(d, Kind::complex, [](const Element& x) { return Value::unit(Real(x[0], 5)); });
  EXPECT_TRUE(check_hermitian(chi, 0.0).holds);
  const auto bad = with_value(chi, 2, Value::unit(Real(1, 7)));
  const CheckReport r = check_hermitian(bad, 0.0);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(*r.witness->point("x"), g.element({2}));
}

TEST(CosetConstancy, CounterexampleWitnesses) {
  const auto [f, g] = builtin_counterexample();
  const Group& grp = f.group();
  EXPECT_TRUE(check_coset_constant(f, 4, 0.0).holds);
  EXPECT_TRUE(check_coset_constant(g, 4, 0.0).holds);
  const CheckReport whole = check_coset_constant(f, 2, 0.0);
  EXPECT_FALSE(whole.holds);
  expect_witness(whole, grp.element({1, 0}), grp.element({1, 2}));
  const CheckReport at = check_coset_constant_at(f, 2, grp.element({1, 1}), 0.0);
  EXPECT_FALSE(at.holds);
  expect_witness(at, grp.element({1, 1}), grp.element({1, 3}));
  EXPECT_THROW(check_coset_constant(f, 3, 0.0), InvalidArgument);
}

TEST(CosetConstancyProperty, AgreesWithBruteForceCosets) {
  std::mt19937_64 rng(43);
  for (const auto& g : oracle::groups_up_to_16()) {
    const auto elems = oracle::all_elements(g);
    for (int m : {2, 4}) {
      const auto cs = oracle::cosets(g, m);
      // Random coset-constant table, then one flipped point.
      std::map<Element, int> val;
      for (const auto& [rep, members] : cs) val[rep] = std::bernoulli_distribution(0.5)(rng) ? 1 : -1;
      auto sign_at = [&](const Element& x) {
        for (const auto& [rep, members] : cs)
          if (members.contains(x)) return val[rep];
        return 0;
      };
      const auto t = FuncTable::generate(Domain::full(g), Kind::sign, [&](const Element& x) { return Value::sign(sign_at(x)); });
      EXPECT_TRUE(check_coset_constant(t, m, 0.0).holds);
      const std::size_t i = std::uniform_int_distribution<std::size_t>(0, elems.size() - 1)(rng);
      const auto flipped = with_value(t, i, t[i] * Value::sign(-1));
      bool singleton = false;
      for (const auto& [rep, members] : cs)
        if (members.contains(elems[i]) && members.size() == 1) singleton = true;
      EXPECT_EQ(check_coset_constant(flipped, m, 0.0).holds, singleton) << g.str();
    }
  }
}

TEST(SignEquation, CounterexampleSignsSatisfyIt) {
  const auto [f, g] = builtin_counterexample();
  EXPECT_TRUE(check_sign_eq26(f, g).holds);
  const auto bad = with_value(g, 1, g[1] * Value::sign(-1));
  EXPECT_FALSE(check_sign_eq26(f, bad).holds);
}

TEST(Polynomial, DegreeDetection) {
  const Group g(2, {});
  const Domain d = Domain::box(g, 3);
  const auto quad = RealTable::generate(d, Kind::real, [](const Element& x) {
    return Real(x[0] * x[0] - 3 * x[0] * x[1]) + Real(x[1], 2) + Real(7);
  });
  EXPECT_TRUE(check_polynomial(quad, 2, 0.0).holds);
  EXPECT_FALSE(check_polynomial(quad, 1, 0.0).holds);
  EXPECT_TRUE(check_quadratic(RealTable::generate(d, Kind::real, [](const Element& x) { return Real(x[0] * x[1]); }), 0.0).holds);
  EXPECT_FALSE(check_quadratic(quad, 0.0).holds);  // constant term breaks P(0) = 0 form of the identity
  const auto cubic = RealTable::generate(d, Kind::real, [](const Element& x) { return Real(x[0] * x[0] * x[0]); });
  const CheckReport r = check_polynomial(cubic, 2, 0.0);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness);
  EXPECT_NE(r.witness->point("h"), nullptr);
}

TEST(Polynomial, TripleDifferenceAnnihilatesQuadraticPlusCosetConstant) {
  const Group g(1, {2});
  const Domain d = Domain::box(g, 3);
  const CosetConstantMap r(g, {Real(0), Real(5), Real(-2), Real(1, 3)});
  const auto t = RealTable::generate(d, Kind::real, [&](const Element& x) { return Real(x[0] * x[0]) + r(x); });
  EXPECT_TRUE(check_eq5(t, 0.0).holds);
  EXPECT_FALSE(check_polynomial(t, 2, 0.0).holds);
  const auto cubic = RealTable::generate(d, Kind::real, [](const Element& x) { return Real(x[0] * x[0] * x[0]); });
  EXPECT_FALSE(check_eq5(cubic, 0.0).holds);
}

TEST(Polynomial, CauchyAndDelta) {
  const Group g(1, {3});
  const Domain d = Domain::box(g, 4);
  const auto lin = RealTable::generate(d, Kind::real, [](const Element& x) { return Real(3 * x[0], 2); });
  EXPECT_TRUE(check_cauchy(lin, 0.0).holds);
  const auto sq = RealTable::generate(d, Kind::real, [](const Element& x) { return Real(x[0] * x[0]); });
  EXPECT_FALSE(check_cauchy(sq, 0.0).holds);
  const RealTable dl = delta(sq, g.element({1, 0}));
  EXPECT_EQ(dl.domain().radius(), (std::vector<Coord>{3}));
  for (const auto& x : dl.domain().elements()) EXPECT_EQ(dl.at(x), Real(2 * x[0] + 1));
}

TEST(Character, RejectsNonCharacters) {
  const Group g(0, {4});
  const Domain d = Domain::full(g);
  const auto not_mult = FuncTable::generate(d, Kind::complex, [](const Element& x) {
    return Value::unit(Real(x[0] * x[0], 4));
  });
  EXPECT_FALSE(check_character(not_mult, 0.0).holds);
  const auto not_unit = FuncTable::generate(d, Kind::complex, [](const Element&) { return Value::exp(Real(1)); });
  EXPECT_FALSE(check_character(not_unit, 0.0).holds);
}
