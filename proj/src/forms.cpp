#include "kbfe/forms.hpp"

#include <algorithm>

#include "kbfe/error.hpp"

namespace kbfe {

namespace {

void require_group(const Group& expected, const Element& x) {
  if (!expected.owns(x)) throw InvalidArgument("element " + x.str() + " does not belong to " + expected.str());
}

}  // namespace

// --- QuadraticForm ---------------------------------------------------------

QuadraticForm::QuadraticForm(const Group& g)
    : group_(g), b_(static_cast<std::size_t>(g.rank()), std::vector<Real>(static_cast<std::size_t>(g.rank()))) {}

QuadraticForm::QuadraticForm(const Group& g, Matrix free_block) : group_(g), b_(std::move(free_block)) {
  const auto n = static_cast<std::size_t>(g.rank());
  if (b_.size() != n) throw InvalidArgument("quadratic form needs a " + std::to_string(n) + "x" + std::to_string(n) + " block");
  for (const auto& row : b_)
    if (row.size() != n) throw InvalidArgument("quadratic form block is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(b_[i][j] == b_[j][i])) throw InvalidArgument("quadratic form matrix is not symmetric");
}

Real QuadraticForm::coefficient(std::size_t i, std::size_t j) const {
  if (i >= group_.dim() || j >= group_.dim()) throw InvalidArgument("coefficient index out of range");
  if (!group_.is_free(i) || !group_.is_free(j)) return Real(0);
  return b_[i][j];
}

Real QuadraticForm::operator()(const Element& x) const { return bilinear(x, x); }

Real QuadraticForm::bilinear(const Element& x, const Element& y) const {
  require_group(group_, x);
  require_group(group_, y);
  Real s(0);
  for (std::size_t i = 0; i < b_.size(); ++i) {
    if (x[i] == 0) continue;
    Real row(0);
    for (std::size_t j = 0; j < b_.size(); ++j)
      if (y[j] != 0) row += b_[i][j] * Real(y[j]);
    s += row * Real(x[i]);
  }
  return s;
}

bool QuadraticForm::is_zero() const {
  for (const auto& row : b_)
    for (const auto& v : row)
      if (!v.is_zero()) return false;
  return true;
}

// --- AdditiveMap -----------------------------------------------------------

AdditiveMap::AdditiveMap(const Group& g) : group_(g), c_(static_cast<std::size_t>(g.rank())) {}

AdditiveMap::AdditiveMap(const Group& g, std::vector<Real> free_coeffs) : group_(g), c_(std::move(free_coeffs)) {
  if (c_.size() != static_cast<std::size_t>(g.rank()))
    throw InvalidArgument("additive map needs " + std::to_string(g.rank()) + " coefficients");
}

Real AdditiveMap::operator()(const Element& x) const {
  require_group(group_, x);
  Real s(0);
  for (std::size_t j = 0; j < c_.size(); ++j)
    if (x[j] != 0) s += c_[j] * Real(x[j]);
  return s;
}

bool AdditiveMap::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Real& r) { return r.is_zero(); });
}

// --- CosetConstantMap ------------------------------------------------------

CosetConstantMap::CosetConstantMap(const Group& g) : group_(g), v_(g.coset_count(2)) {}

CosetConstantMap::CosetConstantMap(const Group& g, std::vector<Real> values) : group_(g), v_(std::move(values)) {
  if (v_.size() != g.coset_count(2))
    throw InvalidArgument("coset-constant map needs " + std::to_string(g.coset_count(2)) + " values");
}

const Real& CosetConstantMap::at(const CosetIndex& c) const {
  if (c.modulus != 2) throw InvalidArgument("coset-constant maps are indexed by X^(2)-cosets");
  return v_[group_.coset_ordinal(c)];
}

Real CosetConstantMap::operator()(const Element& x) const { return at(group_.coset_index(x, 2)); }

CosetConstantMap CosetConstantMap::negated() const {
  std::vector<Real> v;
  v.reserve(v_.size());
  for (const auto& r : v_) v.push_back(-r);
  return CosetConstantMap(group_, std::move(v));
}

bool CosetConstantMap::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](const Real& r) { return r.is_zero(); });
}

// --- CharacterSpec ---------------------------------------------------------

CharacterSpec::CharacterSpec(const Group& g)
    : group_(g), theta_(static_cast<std::size_t>(g.rank()), mpq_class(0)), k_(g.torsion().size(), 0) {}

CharacterSpec::CharacterSpec(const Group& g, std::vector<mpq_class> free_turns, std::vector<Coord> torsion_exponents)
    : group_(g), theta_(std::move(free_turns)), k_(std::move(torsion_exponents)) {
  if (theta_.size() != static_cast<std::size_t>(g.rank()))
    throw InvalidArgument("character needs one free angle per free coordinate");
  if (k_.size() != g.torsion().size()) throw InvalidArgument("character needs one exponent per torsion factor");
  for (auto& t : theta_) {
    t.canonicalize();
    t = Real(t).frac().rational();
  }
  for (std::size_t i = 0; i < k_.size(); ++i) {
    Coord n = g.torsion()[i];
    k_[i] = ((k_[i] % n) + n) % n;
  }
}

Real CharacterSpec::turn(const Element& x) const {
  require_group(group_, x);
  mpq_class t(0);
  for (std::size_t j = 0; j < theta_.size(); ++j) t += theta_[j] * mpq_class(static_cast<long>(x[j]));
  const auto r = static_cast<std::size_t>(group_.rank());
  for (std::size_t i = 0; i < k_.size(); ++i)
    t += mpq_class(static_cast<long>(k_[i] * x[r + i]), static_cast<unsigned long>(group_.torsion()[i]));
  return Real(t).frac();
}

bool CharacterSpec::is_trivial() const {
  return std::all_of(theta_.begin(), theta_.end(), [](const mpq_class& q) { return sgn(q) == 0; }) &&
         std::all_of(k_.begin(), k_.end(), [](Coord k) { return k == 0; });
}

// --- SignMap ---------------------------------------------------------------

SignMap::SignMap(const Group& g, int modulus) : group_(g), modulus_(modulus) {
  if (modulus != 2 && modulus != 4) throw InvalidArgument("sign map modulus must be 2 or 4");
  v_.assign(g.coset_count(modulus), 1);
}

SignMap::SignMap(const Group& g, int modulus, std::vector<int> values) : group_(g), modulus_(modulus), v_(std::move(values)) {
  if (modulus != 2 && modulus != 4) throw InvalidArgument("sign map modulus must be 2 or 4");
  if (v_.size() != g.coset_count(modulus))
    throw InvalidArgument("sign map needs " + std::to_string(g.coset_count(modulus)) + " values");
  const auto cosets = g.cosets(modulus);
  for (std::size_t k = 0; k < cosets.size(); ++k) {
    if (v_[k] != 1 && v_[k] != -1) throw InvalidArgument("sign map values must be +1 or -1");
    const Element rep = g.representative(cosets[k]);
    if (g.in_image(rep, 2) && v_[k] != 1)
      throw InvalidArgument("sign map must be 1 on X^(2); coset of " + rep.str() + " has -1");
    const std::size_t opp = g.coset_ordinal(g.coset_index(g.neg(rep), modulus));
    if (v_[opp] != v_[k]) throw InvalidArgument("sign map is not even at " + rep.str());
  }
}

int SignMap::operator()(const Element& x) const { return v_[group_.coset_ordinal(group_.coset_index(x, modulus_))]; }

bool SignMap::constant_on_doubles() const {
  if (modulus_ == 2) return true;
  std::vector<int> coarse(group_.coset_count(2), 0);
  const auto cosets = group_.cosets(modulus_);
  for (std::size_t k = 0; k < cosets.size(); ++k) {
    auto c2 = group_.coset_ordinal(group_.coset_index(group_.representative(cosets[k]), 2));
    if (coarse[c2] == 0)
      coarse[c2] = v_[k];
    else if (coarse[c2] != v_[k])
      return false;
  }
  return true;
}

SignMap SignMap::coarsen() const {
  if (modulus_ == 2) return *this;
  if (!constant_on_doubles()) throw InvalidArgument("sign map is not constant on X^(2)-cosets");
  std::vector<int> coarse(group_.coset_count(2), 1);
  const auto cosets = group_.cosets(modulus_);
  for (std::size_t k = 0; k < cosets.size(); ++k)
    coarse[group_.coset_ordinal(group_.coset_index(group_.representative(cosets[k]), 2))] = v_[k];
  return SignMap(group_, 2, std::move(coarse));
}

bool SignMap::is_trivial() const {
  return std::all_of(v_.begin(), v_.end(), [](int s) { return s == 1; });
}

// --- forms -----------------------------------------------------------------

PositiveSolutionForm PositiveSolutionForm::zero(const Group& g) {
  return {QuadraticForm(g), AdditiveMap(g), AdditiveMap(g), CosetConstantMap(g)};
}

HermitianSolutionForm HermitianSolutionForm::trivial(const Group& g) {
  HermitianSolutionForm h;
  h.alpha = CharacterSpec(g);
  h.beta = CharacterSpec(g);
  h.a = SignMap(g, 4);
  h.b = SignMap(g, 4);
  h.P = QuadraticForm(g);
  h.r = CosetConstantMap(g);
  return h;
}

std::pair<Value, Value> eval_positive(const PositiveSolutionForm& form, const Element& x) {
  const Real p = form.P(x);
  const Real r = form.r(x);
  return {Value::exp(p + form.l(x) + r), Value::exp(p + form.m(x) - r)};
}

std::pair<Value, Value> eval_hermitian(const HermitianSolutionForm& form, const Element& x) {
  if (form.support && !form.support->contains(x)) return {Value::zero(), Value::zero()};
  const Real p = form.P(x);
  const Real r = form.r(x);
  Value f = Value::sign(form.sign_f * form.a(x)) * form.alpha(x) * Value::exp(p + r);
  Value g = Value::sign(form.sign_g * form.b(x)) * form.beta(x) * Value::exp(p - r);
  return {f, g};
}

std::pair<FuncTable, FuncTable> synth_table(const PositiveSolutionForm& form, const Domain& domain) {
  if (!(domain.group() == form.group())) throw InvalidArgument("domain group does not match the form's group");
  std::vector<Value> f, g;
  f.reserve(domain.size());
  g.reserve(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) {
    auto [fv, gv] = eval_positive(form, domain.at(i));
    f.push_back(std::move(fv));
    g.push_back(std::move(gv));
  }
  return {FuncTable(domain, Kind::positive, std::move(f)), FuncTable(domain, Kind::positive, std::move(g))};
}

std::pair<FuncTable, FuncTable> render_tables(const HermitianSolutionForm& form, const Domain& domain) {
  if (!(domain.group() == form.group())) throw InvalidArgument("domain group does not match the form's group");
  std::vector<Value> f, g;
  f.reserve(domain.size());
  g.reserve(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) {
    auto [fv, gv] = eval_hermitian(form, domain.at(i));
    f.push_back(std::move(fv));
    g.push_back(std::move(gv));
  }
  return {FuncTable(domain, Kind::complex, std::move(f)), FuncTable(domain, Kind::complex, std::move(g))};
}

std::pair<FuncTable, FuncTable> synth_table(const HermitianSolutionForm& form, const Domain& domain) {
  const Group& g = form.group();
  if (!form.a.constant_on_doubles() || !form.b.constant_on_doubles())
    throw InvalidArgument("synthesis needs sign maps constant on X^(2)-cosets; such forms need not solve the equation");
  if (!(form.a.coarsen() == form.b.coarsen()))
    throw InvalidArgument("synthesis needs a(x)b(x) = 1 for every x");
  if (form.sign_f != form.sign_g) throw InvalidArgument("synthesis needs equal global signs for f and g");
  if (form.support) {
    if (!g.doubling_onto()) throw InvalidArgument("a support subgroup requires X^(2) = X");
    if (form.support->quotient_has_order2())
      throw InvalidArgument("support subgroup has a quotient with elements of order 2");
  }
  return render_tables(form, domain);
}

RealTable render(const QuadraticForm& p, const Domain& d) {
  return RealTable::generate(d, Kind::real, [&](const Element& x) { return p(x); });
}

RealTable render(const AdditiveMap& l, const Domain& d) {
  return RealTable::generate(d, Kind::real, [&](const Element& x) { return l(x); });
}

RealTable render(const CosetConstantMap& r, const Domain& d) {
  return RealTable::generate(d, Kind::real, [&](const Element& x) { return r(x); });
}

FuncTable render(const CharacterSpec& alpha, const Domain& d) {
  return FuncTable::generate(d, Kind::complex, [&](const Element& x) { return alpha(x); });
}

FuncTable render(const SignMap& a, const Domain& d) {
  return FuncTable::generate(d, Kind::sign, [&](const Element& x) { return Value::sign(a(x)); });
}

}  // namespace kbfe
