#include "kbfe/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "kbfe/check.hpp"
#include "kbfe/decompose.hpp"

namespace kbfe {

namespace {

Group z4_squared() { return Group(0, {4, 4}); }

FuncTable sign_table_from(const Group& g, const std::set<std::pair<Coord, Coord>>& minus) {
  return FuncTable::generate(Domain::full(g), Kind::sign, [&](const Element& x) {
    return Value::sign(minus.contains({x[0], x[1]}) ? -1 : 1);
  });
}

/// Per-element coset ordinal for modulus m.
std::vector<std::size_t> coset_ordinals(const Group& g, const std::vector<Element>& elems, int m) {
  std::vector<std::size_t> out;
  out.reserve(elems.size());
  for (const auto& x : elems) out.push_back(g.coset_ordinal(g.coset_index(x, m)));
  return out;
}

bool constant_on(const std::vector<int>& v, const std::vector<std::size_t>& ord, std::size_t cosets) {
  std::vector<int> seen(cosets, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    int& s = seen[ord[i]];
    if (s == 0)
      s = v[i];
    else if (s != v[i])
      return false;
  }
  return true;
}

Real random_rational(std::mt19937_64& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(-max_num, max_num), den(1, max_den);
  return Real(num(rng), den(rng));
}

/// Lifts a modulus-2 sign map to modulus 4.
SignMap lift_to_mod4(const Group& g, const SignMap& a2) {
  std::vector<int> v;
  for (const auto& c : g.cosets(4)) v.push_back(a2(g.representative(c)));
  return SignMap(g, 4, std::move(v));
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

}  // namespace

std::pair<FuncTable, FuncTable> builtin_counterexample() {
  const Group g = z4_squared();
  FuncTable f = sign_table_from(g, {{1, 2}, {3, 2}, {2, 1}, {2, 3}, {1, 3}, {3, 1}});
  FuncTable h = sign_table_from(g, {{1, 2}, {3, 2}, {2, 1}, {2, 3}, {1, 1}, {3, 3}});
  return {std::move(f), std::move(h)};
}

FuncTable builtin_odd_quadratic(Coord radius) {
  if (radius < 1) throw InvalidArgument("odd quadratic example needs radius >= 1");
  const Group g(2, {});
  return FuncTable::generate(Domain::box(g, radius), Kind::sign,
                             [](const Element& x) { return Value::sign(((x[0] * x[1]) % 2 == 0) ? 1 : -1); });
}

std::pair<FuncTable, FuncTable> builtin_vanishing() {
  const Group g(0, {9});
  FuncTable f = FuncTable::generate(Domain::full(g), Kind::complex, [](const Element& x) {
    return x[0] % 3 == 0 ? Value::unit(Real(x[0], 9)) : Value::zero();
  });
  return {f, f};
}

std::string to_string(CosetRelation r) {
  switch (r) {
    case CosetRelation::same: return "same";
    case CosetRelation::opposite: return "opposite";
    case CosetRelation::mixed: return "mixed";
  }
  return "mixed";
}

FuncTable sign_table(const Group& g, std::span<const int> values) {
  const Domain d = Domain::full(g);
  if (values.size() != d.size()) throw InvalidArgument("sign table needs one value per element");
  std::vector<Value> v;
  v.reserve(values.size());
  for (int s : values) v.push_back(Value::sign(s));
  return FuncTable(d, Kind::sign, std::move(v));
}

SignSolutionCensus enum_sign_solutions(const Group& g, std::uint64_t max_order, std::uint64_t budget) {
  if (!g.finite()) throw InvalidArgument("sign census needs a finite group");
  if (g.order() > max_order)
    throw InvalidArgument("group order " + std::to_string(g.order()) + " exceeds the census bound " +
                          std::to_string(max_order));
  SignSolutionCensus census;
  census.group = g;
  const Domain d = Domain::full(g);
  census.elements = d.elements();
  const std::size_t n = d.size();
  PointIndex pi(d);

  // Variable positions: a then b for each {x, -x} orbit outside X^(2).
  std::vector<int> apos(n, -1), bpos(n, -1);
  std::vector<std::size_t> var_elem;
  for (std::size_t i = 0; i < n; ++i) {
    if (g.in_image(census.elements[i], 2)) continue;
    const auto j = static_cast<std::size_t>(pi.negate(i));
    if (j < i) {
      apos[i] = apos[j];
      bpos[i] = bpos[j];
      continue;
    }
    apos[i] = static_cast<int>(var_elem.size());
    var_elem.push_back(i);
    bpos[i] = static_cast<int>(var_elem.size());
    var_elem.push_back(i);
  }
  const std::size_t nvars = var_elem.size();
  census.free_variables = nvars;

  struct Eq {
    std::size_t s, t, x, y;
  };
  std::vector<std::vector<Eq>> bucket(nvars + 1);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto s = static_cast<std::size_t>(pi.combine(x, 1, y, 1));
      const auto t = static_cast<std::size_t>(pi.combine(x, 1, y, -1));
      const int last = std::max({apos[s], bpos[t], apos[x], apos[y], bpos[x], bpos[y]});
      bucket[static_cast<std::size_t>(last + 1)].push_back({s, t, x, y});
    }

  std::vector<int> a(n, 1), b(n, 1);
  auto holds = [&](const std::vector<Eq>& eqs) {
    for (const auto& e : eqs)
      if (a[e.s] * b[e.t] != a[e.x] * a[e.y] * b[e.x] * b[e.y]) return false;
    return true;
  };
  auto set_var = [&](std::size_t k, int v) {
    const std::size_t i = var_elem[k];
    const auto j = static_cast<std::size_t>(pi.negate(i));
    auto& arr = (static_cast<int>(k) == apos[i]) ? a : b;
    arr[i] = v;
    arr[j] = v;
  };

  if (!holds(bucket[0])) return census;
  std::function<void(std::size_t)> search = [&](std::size_t k) {
    if (k == nvars) {
      if (census.pairs.size() >= budget)
        throw BudgetExceeded("sign census exceeds the budget of " + std::to_string(budget) + " pairs");
      SignPair p;
      p.a = a;
      p.b = b;
      census.pairs.push_back(std::move(p));
      return;
    }
    for (int v : {1, -1}) {
      set_var(k, v);
      if (holds(bucket[k + 1])) search(k + 1);
    }
    set_var(k, 1);
  };
  search(0);

  const auto ord4 = coset_ordinals(g, census.elements, 4);
  const auto ord2 = coset_ordinals(g, census.elements, 2);
  const std::size_t c4 = g.coset_count(4), c2 = g.coset_count(2);
  for (auto& p : census.pairs) {
    p.a_constant_on_x4 = constant_on(p.a, ord4, c4);
    p.b_constant_on_x4 = constant_on(p.b, ord4, c4);
    p.a_constant_on_x2 = constant_on(p.a, ord2, c2);
    p.b_constant_on_x2 = constant_on(p.b, ord2, c2);
    std::vector<int> rel(c2, 0);  // 1 same, -1 opposite, 2 mixed
    for (std::size_t i = 0; i < n; ++i) {
      int& r = rel[ord2[i]];
      const int here = p.a[i] * p.b[i];
      if (r == 0)
        r = here;
      else if (r != here)
        r = 2;
    }
    for (int r : rel)
      p.relation.push_back(r == 1 ? CosetRelation::same : r == -1 ? CosetRelation::opposite : CosetRelation::mixed);
  }
  auto key_less = [](const std::vector<int>& x, const std::vector<int>& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), std::greater<int>());
  };
  std::sort(census.pairs.begin(), census.pairs.end(), [&](const SignPair& p, const SignPair& q) {
    if (p.a != q.a) return key_less(p.a, q.a);
    return key_less(p.b, q.b);
  });
  return census;
}

std::vector<Value> default_grid() { return {Value::exp(Real(-1)), Value::exp(Real(0)), Value::exp(Real(1))}; }

RestrictedKbResult enum_restricted_kb(const Group& g, const std::vector<Value>& grid, std::uint64_t budget,
                                      std::size_t keep, const RestrictedKbVisitor& visit) {
  if (!g.finite()) throw InvalidArgument("restricted enumeration needs a finite group");
  if (grid.empty()) throw InvalidArgument("value grid is empty");
  for (const auto& v : grid)
    if (!v.is_positive(1e-12)) throw InvalidArgument("grid value " + v.str() + " is not positive");
  const Domain d = Domain::full(g);
  const std::size_t n = d.size();
  const std::size_t cols = 2 * n;  // log f then log g
  PointIndex pi(d);

  // Row-reduce the homogeneous log-domain system, one equation per pair.
  std::vector<std::vector<mpq_class>> basis;
  std::vector<std::size_t> pivots;
  std::vector<long> row(cols);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::fill(row.begin(), row.end(), 0L);
      row[static_cast<std::size_t>(pi.combine(x, 1, y, 1))] += 1;
      row[n + static_cast<std::size_t>(pi.combine(x, 1, y, -1))] += 1;
      row[x] -= 1;
      row[y] -= 1;
      row[n + x] -= 1;
      row[n + static_cast<std::size_t>(pi.negate(y))] -= 1;
      std::vector<mpq_class> r(cols);
      for (std::size_t c = 0; c < cols; ++c) r[c] = row[c];
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (sgn(r[pivots[k]]) == 0) continue;
        const mpq_class factor = r[pivots[k]];
        for (std::size_t c = 0; c < cols; ++c) r[c] -= factor * basis[k][c];
      }
      std::size_t p = 0;
      while (p < cols && sgn(r[p]) == 0) ++p;
      if (p == cols) continue;
      const mpq_class lead = r[p];
      for (auto& v : r) v /= lead;
      for (auto& b : basis) {
        if (sgn(b[p]) == 0) continue;
        const mpq_class factor = b[p];
        for (std::size_t c = 0; c < cols; ++c) b[c] -= factor * r[c];
      }
      basis.push_back(std::move(r));
      pivots.push_back(p);
    }

  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  RestrictedKbResult result;
  result.free_variables = free_cols.size();
  result.combinations = saturating_pow(grid.size(), free_cols.size());
  if (result.combinations > budget)
    throw BudgetExceeded("restricted enumeration needs " +
                         (result.combinations == UINT64_MAX ? std::string("more than 2^64")
                                                            : std::to_string(result.combinations)) +
                         " combinations; budget is " + std::to_string(budget));

  // pivot value = -sum_k coeff[k] * free[k]; checked once its last free variable is set.
  struct Dep {
    std::size_t col;
    std::vector<std::pair<std::size_t, double>> terms;  // (free position, coefficient)
  };
  std::vector<std::vector<Dep>> due(free_cols.size() + 1);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    Dep dep{pivots[k], {}};
    std::size_t last = 0;
    for (std::size_t f = 0; f < free_cols.size(); ++f)
      if (sgn(basis[k][free_cols[f]]) != 0) {
        dep.terms.emplace_back(f, -basis[k][free_cols[f]].get_d());
        last = f + 1;
      }
    due[last].push_back(std::move(dep));
  }

  std::vector<double> glog;
  for (const auto& v : grid) glog.push_back(v.log_modulus().value());
  auto grid_index = [&](double v) -> int {
    for (std::size_t i = 0; i < glog.size(); ++i)
      if (std::fabs(glog[i] - v) <= 1e-9) return static_cast<int>(i);
    return -1;
  };

  std::vector<int> idx(cols, -1);
  auto settle = [&](std::size_t level) {
    for (const auto& dep : due[level]) {
      double v = 0.0;
      for (const auto& [f, c] : dep.terms) v += c * glog[static_cast<std::size_t>(idx[free_cols[f]])];
      const int gi = grid_index(v);
      if (gi < 0) return false;
      idx[dep.col] = gi;
    }
    return true;
  };

  std::function<void(std::size_t)> search = [&](std::size_t level) {
    if (level == free_cols.size()) {
      ++result.solutions;
      std::span<const int> fi(idx.data(), n), gi(idx.data() + n, n);
      if (visit) visit(fi, gi);
      if (result.kept.size() < keep) {
        std::vector<Value> fv, gv;
        for (std::size_t i = 0; i < n; ++i) {
          fv.push_back(grid[static_cast<std::size_t>(fi[i])]);
          gv.push_back(grid[static_cast<std::size_t>(gi[i])]);
        }
        result.kept.emplace_back(FuncTable(d, Kind::positive, std::move(fv)), FuncTable(d, Kind::positive, std::move(gv)));
      }
      return;
    }
    for (std::size_t v = 0; v < grid.size(); ++v) {
      idx[free_cols[level]] = static_cast<int>(v);
      if (settle(level + 1)) search(level + 1);
    }
  };
  if (settle(0)) search(0);
  return result;
}

PositiveSolutionForm random_positive_form(const Group& g, std::mt19937_64& rng) {
  const auto rank = static_cast<std::size_t>(g.rank());
  Matrix b(rank, std::vector<Real>(rank));
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = i; j < rank; ++j) b[i][j] = b[j][i] = random_rational(rng, 4, 4);
  std::vector<Real> l(rank), m(rank), r(g.coset_count(2));
  for (auto& v : l) v = random_rational(rng, 4, 4);
  for (auto& v : m) v = random_rational(rng, 4, 4);
  for (auto& v : r) v = random_rational(rng, 4, 4);
  return {QuadraticForm(g, std::move(b)), AdditiveMap(g, std::move(l)), AdditiveMap(g, std::move(m)),
          CosetConstantMap(g, std::move(r))};
}

HermitianSolutionForm random_hermitian_form(const Group& g, std::mt19937_64& rng) {
  auto character = [&] {
    std::uniform_int_distribution<int> den(1, 8);
    std::vector<mpq_class> theta;
    for (int j = 0; j < g.rank(); ++j) {
      const int q = den(rng);
      theta.emplace_back(std::uniform_int_distribution<int>(0, q - 1)(rng), q);
    }
    std::vector<Coord> k;
    for (Coord n : g.torsion()) k.push_back(std::uniform_int_distribution<Coord>(0, n - 1)(rng));
    return CharacterSpec(g, std::move(theta), std::move(k));
  };
  std::vector<int> signs;
  for (const auto& c : g.cosets(2))
    signs.push_back(g.in_image(g.representative(c), 2) || std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1);
  const SignMap a = lift_to_mod4(g, SignMap(g, 2, std::move(signs)));
  const PositiveSolutionForm pos = random_positive_form(g, rng);
  HermitianSolutionForm h;
  h.alpha = character();
  h.beta = character();
  h.a = a;
  h.b = a;
  h.P = pos.P;
  h.r = pos.r;
  h.sign_f = h.sign_g = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
  return h;
}

std::vector<Group> default_suite_groups() {
  return {Group::parse("Z"),       Group::parse("Z^2"),   Group::parse("Z x Z/2"), Group::parse("Z^2 x Z/4 x Z/3"),
          Group::parse("Z/4 x Z/4"), Group::parse("Z/2 x Z/6"), Group::parse("Z/9"),   Group::parse("Z/8")};
}

SuiteReport verify_theorem_suite(const std::vector<Group>& groups, int trials, std::uint64_t seed) {
  SuiteReport report;
  report.seed = seed;
  std::mt19937_64 rng(seed);

  // Runs one named check; returns false (and records the failure) on a false verdict or an exception.
  auto run = [&](const std::string& name, const std::function<std::string()>& body) {
    SuiteCheck c{name, false, ""};
    try {
      c.detail = body();
      c.passed = true;
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    report.checks.push_back(c);
    if (!c.passed) {
      report.passed = false;
      report.failed_invariant = name;
    }
    return c.passed;
  };
  auto expect = [](bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error(what);
  };

  const auto [cf, cg] = builtin_counterexample();
  if (!run("counterexample solves the equation", [&] {
        const CheckReport r = check_kb(cf, cg);
        expect(r.holds && r.pairs_checked == 256, "check_kb fails on the counterexample");
        return std::to_string(r.pairs_checked) + " pairs";
      }))
    return report;
  if (!run("counterexample constant on X^(4)-cosets, not on X^(2)-cosets", [&] {
        expect(check_coset_constant(cf, 4).holds && check_coset_constant(cg, 4).holds, "not constant mod 4");
        const CheckReport r2 = check_coset_constant(cf, 2);
        expect(!r2.holds, "f is constant on X^(2)-cosets");
        return "witness " + r2.witness->points[0].second.str() + ", " + r2.witness->points[1].second.str();
      }))
    return report;
  if (!run("counterexample decomposes with trivial characters", [&] {
        const HermitianSolutionForm h = decompose_hermitian(cf, cg);
        expect(h.alpha.is_trivial() && h.beta.is_trivial() && h.P.is_zero() && h.r.is_zero(), "nontrivial parts");
        expect(render(h.a, cf.domain()).values() == cf.values() && render(h.b, cg.domain()).values() == cg.values(),
               "sign parts differ from f, g");
        return std::string("alpha = beta = 1, a = f, b = g");
      }))
    return report;
  if (!run("mutated counterexample fails the equation", [&] {
        std::vector<Value> v = cf.values();
        const std::size_t pos = std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng);
        v[pos] = v[pos] * Value::sign(-1);
        const CheckReport r = check_kb(FuncTable(cf.domain(), Kind::sign, v), cg);
        expect(!r.holds && r.witness, "flipping one sign did not break the equation");
        return "flip at " + cf.domain().at(pos).str();
      }))
    return report;
  if (!run("odd quadratic solves the f = g equation with a non-multiplicative sign part", [&] {
        const FuncTable f = builtin_odd_quadratic(8);
        expect(check_kb_self(f).holds, "check_kb_self fails");
        const SelfSolutionForm s = decompose_self(f);
        expect(s.alpha.is_trivial() && s.P.is_zero(), "nontrivial alpha or P");
        expect(s.non_multiplicative.has_value(), "a is multiplicative");
        return "witness " + s.non_multiplicative->points[0].second.str() + ", " +
               s.non_multiplicative->points[1].second.str();
      }))
    return report;

  for (const Group& g : groups) {
    const Domain d = Domain::natural(g, 5);
    const std::string tag = " on " + g.str();
    for (int t = 0; t < trials; ++t) {
      const PositiveSolutionForm form = random_positive_form(g, rng);
      const auto [f, h] = synth_table(form, d);
      if (!run("positive soundness" + tag, [&] {
            const CheckReport r = check_kb(f, h);
            expect(r.holds, "synthesized tables fail the equation");
            return std::to_string(r.pairs_checked) + " pairs";
          }))
        return report;
      if (!run("positive round trip" + tag, [&] {
            expect(decompose_positive(f, h, 0.0) == form, "recovered form differs");
            return std::string("exact");
          }))
        return report;
      const HermitianSolutionForm hform = random_hermitian_form(g, rng);
      const auto [hf, hg] = synth_table(hform, d);
      if (!run("Hermitian soundness" + tag, [&] {
            expect(check_kb(hf, hg).holds, "synthesized tables fail the equation");
            return std::string("holds");
          }))
        return report;
      if (!run("Hermitian functional round trip" + tag, [&] {
            const HermitianSolutionForm back = decompose_hermitian(hf, hg, 0.0);
            auto [rf, rg] = render_tables(back, d);
            expect(rf.values() == hf.values() && rg.values() == hg.values(), "re-rendered tables differ");
            expect(back.a.constant_on_doubles(), "a not constant on X^(2)-cosets");
            return std::string("exact");
          }))
        return report;
    }
    if (g.finite() && g.order() <= 64) {
      if (!run("sign census constant on X^(4)-cosets" + tag, [&] {
            const SignSolutionCensus c = enum_sign_solutions(g);
            for (const auto& p : c.pairs) expect(p.a_constant_on_x4 && p.b_constant_on_x4, "pair not constant mod 4");
            return std::to_string(c.pairs.size()) + " pairs";
          }))
        return report;
    }
  }
  return report;
}

}  // namespace kbfe
