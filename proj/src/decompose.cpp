#include "kbfe/decompose.hpp"

#include <algorithm>
#include <cmath>

namespace kbfe {

namespace {

Element doubled_basis(const Group& g, std::size_t j) { return g.scale(2, g.basis(j)); }

bool same(const Real& a, const Real& b, double tol) { return a.near(b, tol); }

Witness point_witness(const Element& x, std::string lhs, std::string rhs) {
  return Witness{{{"x", x}}, std::move(lhs), std::move(rhs)};
}

FuncTable times_sign(const FuncTable& f, int s) {
  if (s == 1) return f;
  std::vector<Value> v;
  v.reserve(f.size());
  for (const auto& x : f.values()) v.push_back(x * Value::sign(s));
  return FuncTable(f.domain(), f.kind() == Kind::positive ? Kind::complex : f.kind(), std::move(v));
}

/// Rational turn for an exact or approximate value.
mpq_class rational_turn(const Real& t) {
  if (t.exact()) return t.frac().rational();
  mpq_class q;
  if (!rationalize(t.value(), 1e-13, 1000000000000L, q)) q = mpq_class(t.value());
  return Real(q).frac().rational();
}

/// Rounds m * t to an integer, failing when it is not one.
bool integral_multiple(const Real& t, Coord m, double tol, Coord& out) {
  if (t.exact()) {
    mpq_class v = t.rational() * mpq_class(static_cast<long>(m));
    if (v.get_den() != 1) return false;
    mpz_class r = v.get_num() % m;
    out = static_cast<Coord>(r.get_si());
    if (out < 0) out += m;
    return true;
  }
  const double v = t.value() * static_cast<double>(m);
  const double r = std::round(v);
  if (std::fabs(v - r) > tol * static_cast<double>(m)) return false;
  out = ((static_cast<Coord>(r) % m) + m) % m;
  return true;
}

void require_matches(const FuncTable& got, const FuncTable& want, const std::string& name, double tol) {
  const Domain& d = want.domain();
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!near(got[i], want[i], tol, Metric::complex))
      throw ValidationError(name, name + " differs from the input at " + d.at(i).str(),
                            point_witness(d.at(i), got[i].str(), want[i].str()));
}

int real_sign(const Value& v, double tol, const std::string& what) {
  const int s = v.phase().sign_of(tol);
  if (s == 0) throw ValidationError(what + " is real", what + " = " + v.str() + " is not real");
  return s;
}

/// p(2x) = p(x)^2 wherever 2x lies in the window.
void require_doubling(const FuncTable& p, const std::string& name, double tol) {
  const Domain& d = p.domain();
  PointIndex pi(d);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const std::int64_t j = pi.scale(i, 2);
    if (j < 0) continue;
    const Value sq = p[i].pow(2);
    if (!near(p[static_cast<std::size_t>(j)], sq, tol, Metric::complex))
      throw ValidationError(name + "(2x) = " + name + "(x)^2", name + "(2x) != " + name + "(x)^2 at " + d.at(i).str(),
                            point_witness(d.at(i), p[static_cast<std::size_t>(j)].str(), sq.str()));
  }
}

/// Sign table p / alpha; checks values +-1, a = 1 on X^(2) and evenness.
FuncTable sign_part(const FuncTable& p, const CharacterSpec& alpha, const std::string& name, double tol) {
  const Domain& d = p.domain();
  const Group& g = d.group();
  std::vector<Value> v;
  v.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Element x = d.at(i);
    const Value q = p[i] * alpha(x).conj();
    const int s = q.sign_of(tol);
    if (s == 0)
      throw ValidationError(name + " takes the values +-1", name + "(" + x.str() + ") = " + q.str(),
                            point_witness(x, q.str(), "+-1"));
    if (g.in_image(x, 2) && s != 1)
      throw ValidationError(name + " = 1 on X^(2)", name + " is -1 at " + x.str() + " in X^(2)",
                            point_witness(x, "-1", "1"));
    v.push_back(Value::sign(s));
  }
  FuncTable t(d, Kind::sign, std::move(v));
  PointIndex pi(d);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!(t[static_cast<std::size_t>(pi.negate(i))] == t[i]))
      throw ValidationError(name + " even", name + " is not even at " + d.at(i).str(),
                            point_witness(d.at(i), t[static_cast<std::size_t>(pi.negate(i))].str(), t[i].str()));
  ValidationError::require(check_coset_constant(t, 4, tol), name + " constant on X^(4)-cosets");
  return t;
}

SignMap sign_map_from(const FuncTable& t, int modulus) {
  const Group& g = t.group();
  std::vector<int> vals;
  for (const auto& c : g.cosets(modulus)) vals.push_back(t.at(g.representative(c)).sign_of(0.0));
  return SignMap(g, modulus, std::move(vals));
}

}  // namespace

void require_window(const Domain& d, Coord min_radius) {
  if (d.is_full() || d.group().rank() == 0) return;
  if (d.min_radius() < min_radius)
    throw SizingError("decomposition needs a window radius of at least " + std::to_string(min_radius) +
                      " on every free coordinate; got " + std::to_string(d.min_radius()));
}

Deg2Parts recover_deg2(const RealTable& t, double tol) {
  const Domain& d = t.domain();
  const Group& g = d.group();
  require_window(d, 1);
  const auto rank = static_cast<std::size_t>(g.rank());
  const Element zero = g.zero();
  const Real c = t.at(zero);
  Matrix b(rank, std::vector<Real>(rank));
  const Real half(1, 2);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = i; j < rank; ++j) {
      const Element ei = g.basis(i), ej = g.basis(j);
      b[i][j] = half * (t.at(g.add(ei, ej)) - t.at(ei) - t.at(ej) + c);
      b[j][i] = b[i][j];
    }
  std::vector<Real> l(rank);
  for (std::size_t j = 0; j < rank; ++j) l[j] = t.at(g.basis(j)) - c - b[j][j];
  Deg2Parts parts{QuadraticForm(g, std::move(b)), AdditiveMap(g, std::move(l)), c};
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Element x = d.at(i);
    const Real fit = parts.A(x) + parts.l(x) + c;
    if (!same(t[i], fit, tol))
      throw ValidationError("degree <= 2", "table is not a polynomial of degree <= 2 at " + x.str(),
                            point_witness(x, t[i].str(), fit.str()));
  }
  return parts;
}

QuadraticForm extend_biadditive(const Group& g, const Matrix& on_doubles, double tol) {
  const std::size_t dim = g.dim();
  if (on_doubles.size() != dim) throw InvalidArgument("biadditive data needs one row per coordinate");
  const auto rank = static_cast<std::size_t>(g.rank());
  Matrix b(rank, std::vector<Real>(rank));
  const Real quarter(1, 4);
  for (std::size_t i = 0; i < dim; ++i) {
    if (on_doubles[i].size() != dim) throw InvalidArgument("biadditive data must be square");
    for (std::size_t j = 0; j < dim; ++j) {
      if (!same(on_doubles[i][j], on_doubles[j][i], tol))
        throw InvalidArgument("inconsistent biadditive data: not symmetric at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
      if ((!g.is_free(i) || !g.is_free(j)) && !same(on_doubles[i][j], Real(0), tol))
        throw InvalidArgument("inconsistent biadditive data: nonzero on torsion coordinate");
      if (g.is_free(i) && g.is_free(j)) b[i][j] = on_doubles[i][j] * quarter;
    }
  }
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = i + 1; j < rank; ++j) b[j][i] = b[i][j];
  return QuadraticForm(g, std::move(b));
}

AdditiveMap extend_additive(const Group& g, const std::vector<Real>& on_doubles, double tol) {
  if (on_doubles.size() != g.dim()) throw InvalidArgument("additive data needs one value per coordinate");
  std::vector<Real> c;
  const Real half(1, 2);
  for (std::size_t j = 0; j < g.dim(); ++j) {
    if (g.is_free(j))
      c.push_back(on_doubles[j] * half);
    else if (!same(on_doubles[j], Real(0), tol))
      throw InvalidArgument("inconsistent additive data: nonzero on torsion coordinate " + std::to_string(j));
  }
  return AdditiveMap(g, std::move(c));
}

TParts decompose_T(const RealTable& t, double tol) {
  const Domain& d = t.domain();
  const Group& g = d.group();
  require_window(d);
  auto [even, odd] = table_even_odd_split(t);

  std::vector<Real> l2;
  for (std::size_t j = 0; j < g.dim(); ++j) l2.push_back(odd.at(doubled_basis(g, j)));
  AdditiveMap l;
  try {
    l = extend_additive(g, l2, tol);
  } catch (const InvalidArgument& e) {
    throw ValidationError("odd part additive", e.what());
  }

  // On X^(2) the even part is A(y, y) + const; read A through U(x) = T_even(2x).
  const Deg2Parts u = recover_deg2(pullback_doubling(even), tol);
  Matrix on_doubles(g.dim(), std::vector<Real>(g.dim()));
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j) on_doubles[i][j] = u.A.coefficient(i, j);
  QuadraticForm p = extend_biadditive(g, on_doubles, tol);

  std::vector<Real> r;
  for (const auto& c : g.cosets(2)) {
    const Element rep = g.representative(c);
    r.push_back(even.at(rep) - p(rep));
  }
  TParts parts{std::move(p), std::move(l), CosetConstantMap(g, std::move(r))};

  for (std::size_t i = 0; i < d.size(); ++i) {
    const Element x = d.at(i);
    const Real fit = parts.P(x) + parts.l(x) + parts.r(x);
    if (!same(t[i], fit, tol))
      throw ValidationError("T = P + l + r", "residual T - P - l - r is nonzero at " + x.str(),
                            point_witness(x, t[i].str(), fit.str()));
  }
  return parts;
}

PositiveSolutionForm decompose_positive(const FuncTable& f, const FuncTable& g, double tol) {
  if (!(f.domain() == g.domain())) throw InvalidArgument("f and g are defined on different domains");
  const Domain& d = f.domain();
  require_window(d);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!f[i].is_positive(tol)) throw InvalidArgument("f is not positive at " + d.at(i).str());
    if (!g[i].is_positive(tol)) throw InvalidArgument("g is not positive at " + d.at(i).str());
  }
  try {
    TParts tf = decompose_T(log_modulus(f), tol);
    TParts tg = decompose_T(log_modulus(g), tol);
    const auto rank = static_cast<std::size_t>(d.group().rank());
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j)
        if (!same(tf.P.free_block()[i][j], tg.P.free_block()[i][j], tol))
          throw ValidationError("P_f = P_g", "quadratic parts of log f and log g differ at entry (" +
                                                 std::to_string(i) + "," + std::to_string(j) + ")",
                                Witness{{}, tf.P.free_block()[i][j].str(), tg.P.free_block()[i][j].str()});
    const auto cosets = d.group().cosets(2);
    for (std::size_t k = 0; k < cosets.size(); ++k)
      if (!same(tg.r.values()[k], -tf.r.values()[k], tol)) {
        const Element rep = d.group().representative(cosets[k]);
        throw ValidationError("s = -r", "coset constants of log g are not the negatives of those of log f",
                              point_witness(rep, tg.r.values()[k].str(), (-tf.r.values()[k]).str()));
      }
    return PositiveSolutionForm{std::move(tf.P), std::move(tf.l), std::move(tg.l), std::move(tf.r)};
  } catch (const ValidationError&) {
    // Prefer an equation witness when the input is not a solution at all.
    CheckReport kb = check_kb(f, g, tol);
    if (!kb.holds) throw ValidationError("equation (f, g)", "f and g do not satisfy the equation", kb.witness);
    throw;
  }
}

CharacterSpec extend_character(const Group& g, const std::vector<Real>& doubled_turns, double tol) {
  if (doubled_turns.size() != g.dim()) throw InvalidArgument("character data needs one turn per coordinate");
  const auto rank = static_cast<std::size_t>(g.rank());
  std::vector<mpq_class> theta;
  std::vector<Coord> k;
  for (std::size_t j = 0; j < g.dim(); ++j) {
    if (j < rank) {
      theta.push_back(rational_turn(doubled_turns[j]) / 2);
      continue;
    }
    const Coord n = g.modulus_of(j);
    Coord m = 0;
    if (n % 2 == 0) {
      // 2 e_j has order n / 2, so chi(2 e_j) is an (n/2)-th root of unity.
      if (!integral_multiple(doubled_turns[j], n / 2, tol, m))
        throw InvalidArgument("not a character of X^(2): turn " + doubled_turns[j].str() + " at 2e_" +
                              std::to_string(j) + " is not a multiple of 2/" + std::to_string(n));
      k.push_back(m);
    } else {
      if (!integral_multiple(doubled_turns[j], n, tol, m))
        throw InvalidArgument("not a character of X^(2): turn " + doubled_turns[j].str() + " at 2e_" +
                              std::to_string(j) + " is not a multiple of 1/" + std::to_string(n));
      k.push_back((m * ((n + 1) / 2)) % n);
    }
  }
  CharacterSpec alpha(g, std::move(theta), std::move(k));
  for (std::size_t j = 0; j < g.dim(); ++j) {
    const Real got = alpha.turn(doubled_basis(g, j));
    const Real want = doubled_turns[j].frac();
    Real diff = (got - want).frac();
    if (!same(diff, Real(0), tol) && !same(diff, Real(1), tol))
      throw InvalidArgument("character extension does not restrict to the input at 2e_" + std::to_string(j));
  }
  return alpha;
}

HermitianSolutionForm decompose_hermitian(const FuncTable& f, const FuncTable& g, double tol) {
  if (!(f.domain() == g.domain())) throw InvalidArgument("f and g are defined on different domains");
  const Domain& d = f.domain();
  const Group& grp = d.group();
  require_window(d);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (f[i].is_zero() || g[i].is_zero())
      throw InvalidArgument("input vanishes at " + d.at(i).str() + "; use the vanishing decomposition");
  ValidationError::require(check_hermitian(f, tol), "f Hermitian");
  ValidationError::require(check_hermitian(g, tol), "g Hermitian");

  const Element zero = grp.zero();
  const int sf = real_sign(f.at(zero), tol, "f(0)");
  const int sg = real_sign(g.at(zero), tol, "g(0)");
  const FuncTable fn = times_sign(f, sf), gn = times_sign(g, sg);

  PositiveSolutionForm mod = decompose_positive(modulus_table(fn).as(Kind::positive), modulus_table(gn).as(Kind::positive), tol);
  for (std::size_t j = 0; j < mod.l.coeffs().size(); ++j)
    if (!same(mod.l.coeffs()[j], Real(0), tol) || !same(mod.m.coeffs()[j], Real(0), tol))
      throw ValidationError("|f|, |g| even", "moduli have an additive part");

  const FuncTable p = phase_table(fn), q = phase_table(gn);
  require_doubling(p, "p", tol);
  require_doubling(q, "q", tol);
  auto squared = [](const FuncTable& t) {
    return FuncTable::generate(t.domain(), Kind::complex, [&](const Element& x) { return t.at(x).pow(2); });
  };
  ValidationError::require(check_character(squared(p), tol), "p^2 multiplicative");
  ValidationError::require(check_character(squared(q), tol), "q^2 multiplicative");

  std::vector<Real> tp, tq;
  for (std::size_t j = 0; j < grp.dim(); ++j) {
    const Element y = doubled_basis(grp, j);
    tp.push_back(p.at(y).turn());
    tq.push_back(q.at(y).turn());
  }
  CharacterSpec alpha, beta;
  try {
    alpha = extend_character(grp, tp, tol);
    beta = extend_character(grp, tq, tol);
  } catch (const InvalidArgument& e) {
    throw ValidationError("p, q characters on X^(2)", e.what());
  }

  const FuncTable at = sign_part(p, alpha, "a", tol);
  const FuncTable bt = sign_part(q, beta, "b", tol);
  ValidationError::require(check_sign_eq26(at, bt), "a(x+y) b(x-y) = a(x) a(y) b(x) b(y)");

  HermitianSolutionForm form;
  form.alpha = std::move(alpha);
  form.beta = std::move(beta);
  form.a = sign_map_from(at, 4);
  form.b = sign_map_from(bt, 4);
  form.P = std::move(mod.P);
  form.r = std::move(mod.r);
  form.sign_f = sf;
  form.sign_g = sg;

  auto [rf, rg] = render_tables(form, d);
  require_matches(rf, f, "reconstructed f", tol);
  require_matches(rg, g, "reconstructed g", tol);
  return form;
}

SelfSolutionForm decompose_self(const FuncTable& f, double tol) {
  HermitianSolutionForm h = decompose_hermitian(f, f, tol);
  const Group& g = f.group();
  for (const auto& v : h.r.values())
    if (!same(v, Real(0), tol)) throw ValidationError("r = 0", "coset constants do not vanish for f = g");
  if (!h.a.constant_on_doubles())
    ValidationError::require(check_coset_constant(render(h.a, f.domain()), 2, tol), "a constant on X^(2)-cosets");

  SelfSolutionForm s{std::move(h.alpha), h.a.coarsen(), std::move(h.P), h.sign_f, std::nullopt};
  const auto cosets = g.cosets(2);
  for (std::size_t i = 0; i < cosets.size() && !s.non_multiplicative; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const Element x = g.representative(cosets[i]), y = g.representative(cosets[j]);
      const int lhs = s.a(g.add(x, y)), rhs = s.a(x) * s.a(y);
      if (lhs != rhs) {
        s.non_multiplicative = Witness{{{"x", x}, {"y", y}}, std::to_string(lhs), std::to_string(rhs)};
        break;
      }
    }
  return s;
}

HermitianSolutionForm decompose_vanishing(const FuncTable& f, const FuncTable& g, double tol, std::uint64_t budget) {
  if (!(f.domain() == g.domain())) throw InvalidArgument("f and g are defined on different domains");
  const Domain& d = f.domain();
  const Group& grp = d.group();
  if (!grp.doubling_onto())
    throw HypothesisError("the vanishing decomposition requires X^(2) = X, which fails for " + grp.str());
  const auto nonzero = [](const FuncTable& t) {
    return std::any_of(t.values().begin(), t.values().end(), [](const Value& v) { return !v.is_zero(); });
  };
  if (!nonzero(f) || !nonzero(g)) throw InvalidArgument("f and g must not vanish identically");
  ValidationError::require(check_hermitian(f, tol), "f Hermitian");
  ValidationError::require(check_hermitian(g, tol), "g Hermitian");

  const Element zero = grp.zero();
  const Value f0 = f.at(zero), g0 = g.at(zero);
  if (!near(f0 * g0, Value::one(), tol, Metric::complex))
    throw ValidationError("f(0) g(0) = 1", "f(0) g(0) = " + (f0 * g0).str(), point_witness(zero, (f0 * g0).str(), "1"));

  for (std::size_t i = 0; i < d.size(); ++i) {
    const Value lhs = f[i].modulus() * g0.modulus(), rhs = g[i].modulus() * f0.modulus();
    if (!near(lhs, rhs, tol, Metric::complex))
      throw ValidationError("|f| = |g|", "normalized moduli differ at " + d.at(i).str(),
                            point_witness(d.at(i), lhs.str(), rhs.str()));
  }

  // Support: greedy generators, then exact agreement with the zero pattern.
  std::vector<Element> gens;
  Subgroup sub(grp, {});
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (f[i].is_zero()) continue;
    const Element x = d.at(i);
    if (sub.contains(x)) continue;
    gens.push_back(x);
    sub = Subgroup(grp, gens);
  }
  for (std::size_t i = 0; i < d.size(); ++i)
    if (sub.contains(d.at(i)) == f[i].is_zero())
      throw ValidationError("support is a subgroup", "the nonzero set of f is not a subgroup",
                            point_witness(d.at(i), f[i].str(), "support of the generated subgroup"));
  const std::vector<Element> members = sub.enumerate();
  {
    std::vector<Element> doubles;
    for (const auto& x : members) doubles.push_back(grp.scale(2, x));
    std::sort(doubles.begin(), doubles.end());
    doubles.erase(std::unique(doubles.begin(), doubles.end()), doubles.end());
    if (doubles.size() != members.size()) throw ValidationError("G^(2) = G", "doubling is not onto the support");
  }
  if (sub.quotient_has_order2()) throw ValidationError("X/G has no elements of order 2", "X/G has an element of order 2");

  for (const auto& x : members)
    if (!near(f.at(x).modulus(), f0.modulus(), tol, Metric::complex))
      throw ValidationError("|f| constant on G", "|f| is not constant on the support",
                            point_witness(x, f.at(x).modulus().str(), f0.modulus().str()));

  const int sf = real_sign(f0, tol, "f(0)");
  const int sg = real_sign(g0, tol, "g(0)");

  // alpha = f / f(0) and beta = g / g(0) must be characters of G.
  auto character_on_support = [&](const FuncTable& t, const Value& t0, const std::string& name) {
    const Value inv = t0.inverse();
    for (const auto& x : members)
      for (const auto& y : members) {
        const Value lhs = t.at(grp.add(x, y)) * inv;
        const Value rhs = t.at(x) * inv * t.at(y) * inv;
        if (!near(lhs, rhs, tol, Metric::complex))
          throw ValidationError(name + " multiplicative on G", name + " is not a character of the support",
                                Witness{{{"x", x}, {"y", y}}, lhs.str(), rhs.str()});
      }
    // First character of X agreeing with t / t(0) on the generators of G.
    const std::vector<Coord>& n = grp.torsion();
    std::uint64_t count = 1;
    for (Coord m : n) count *= static_cast<std::uint64_t>(m);
    if (count > budget)
      throw BudgetExceeded("extending a character from the support needs " + std::to_string(count) +
                           " candidates; budget is " + std::to_string(budget));
    std::vector<Coord> k(n.size(), 0);
    for (std::uint64_t c = 0; c < count; ++c) {
      CharacterSpec chi(grp, {}, k);
      bool ok = true;
      for (const auto& x : gens)
        if (!near(chi(x), t.at(x) * inv, tol, Metric::complex)) {
          ok = false;
          break;
        }
      if (ok) return chi;
      for (std::size_t i = n.size(); i > 0; --i) {
        if (++k[i - 1] < n[i - 1]) break;
        k[i - 1] = 0;
      }
    }
    throw ValidationError(name + " extends to X", "no character of X restricts to " + name);
  };

  HermitianSolutionForm form = HermitianSolutionForm::trivial(grp);
  form.alpha = character_on_support(f, f0, "alpha");
  form.beta = character_on_support(g, g0, "beta");
  form.r = CosetConstantMap(grp, {f0.log_modulus()});
  form.support = sub;
  form.sign_f = sf;
  form.sign_g = sg;

  auto [rf, rg] = render_tables(form, d);
  require_matches(rf, f, "reconstructed f", tol);
  require_matches(rg, g, "reconstructed g", tol);
  return form;
}

}  // namespace kbfe
