#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kbfe/group.hpp"
#include "kbfe/real.hpp"
#include "kbfe/table.hpp"
#include "kbfe/value.hpp"

namespace kbfe {

using Matrix = std::vector<std::vector<Real>>;

/// P(x) = x^T B x with B symmetric.
///
/// Only the free block of B is stored. A real-valued biadditive form
/// vanishes on torsion (A(t, y) * n = A(n t, y) = 0), so every row and column
/// touching a torsion coordinate is structurally zero.
class QuadraticForm {
 public:
  QuadraticForm() = default;
  explicit QuadraticForm(const Group& g);  // zero form
  /// `free_block` is rank x rank and must be symmetric.
  QuadraticForm(const Group& g, Matrix free_block);

  const Group& group() const noexcept { return group_; }
  /// Entry of B over all coordinates; zero on torsion rows and columns.
  Real coefficient(std::size_t i, std::size_t j) const;
  const Matrix& free_block() const noexcept { return b_; }

  Real operator()(const Element& x) const;
  /// Symmetric biadditive form A(x, y) = x^T B y.
  Real bilinear(const Element& x, const Element& y) const;
  bool is_zero() const;

  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;

 private:
  Group group_;
  Matrix b_;
};

/// l(x) = sum_j c_j x_j over the free coordinates; zero on torsion.
class AdditiveMap {
 public:
  AdditiveMap() = default;
  explicit AdditiveMap(const Group& g);
  AdditiveMap(const Group& g, std::vector<Real> free_coeffs);

  const Group& group() const noexcept { return group_; }
  const std::vector<Real>& coeffs() const noexcept { return c_; }
  Real operator()(const Element& x) const;
  bool is_zero() const;

  friend bool operator==(const AdditiveMap&, const AdditiveMap&) = default;

 private:
  Group group_;
  std::vector<Real> c_;
};

/// A real function that depends on x only through its X^(2)-coset.
class CosetConstantMap {
 public:
  CosetConstantMap() = default;
  explicit CosetConstantMap(const Group& g);
  /// One value per coset, in the order of Group::cosets(2).
  CosetConstantMap(const Group& g, std::vector<Real> values);

  const Group& group() const noexcept { return group_; }
  const std::vector<Real>& values() const noexcept { return v_; }
  const Real& at(const CosetIndex& c) const;
  Real operator()(const Element& x) const;
  CosetConstantMap negated() const;
  bool is_zero() const;

  friend bool operator==(const CosetConstantMap&, const CosetConstantMap&) = default;

 private:
  Group group_;
  std::vector<Real> v_;
};

/// alpha(x) = exp(2 pi i (sum_j theta_j x_j + sum_i k_i x_i / n_i)).
///
/// Free angles are rational fractions of a full turn, so multiplicativity
/// and |alpha| = 1 hold exactly.
class CharacterSpec {
 public:
  CharacterSpec() = default;
  explicit CharacterSpec(const Group& g);  // trivial character
  CharacterSpec(const Group& g, std::vector<mpq_class> free_turns, std::vector<Coord> torsion_exponents);

  const Group& group() const noexcept { return group_; }
  const std::vector<mpq_class>& free_turns() const noexcept { return theta_; }
  const std::vector<Coord>& torsion_exponents() const noexcept { return k_; }

  /// Turn of alpha(x) in [0, 1).
  Real turn(const Element& x) const;
  Value operator()(const Element& x) const { return Value::unit(turn(x)); }
  bool is_trivial() const;

  friend bool operator==(const CharacterSpec&, const CharacterSpec&) = default;

 private:
  Group group_;
  std::vector<mpq_class> theta_;
  std::vector<Coord> k_;
};

/// A +-1 function constant on cosets of X^(m), m in {2, 4}.
class SignMap {
 public:
  SignMap() = default;
  SignMap(const Group& g, int modulus);  // constant +1
  /// One sign per coset in the order of Group::cosets(modulus). Validates
  /// value 1 on cosets inside X^(2) and evenness under negation.
  SignMap(const Group& g, int modulus, std::vector<int> values);

  const Group& group() const noexcept { return group_; }
  int modulus() const noexcept { return modulus_; }
  const std::vector<int>& values() const noexcept { return v_; }
  int operator()(const Element& x) const;
  /// Constant on X^(2)-cosets as well (always true for modulus 2).
  bool constant_on_doubles() const;
  /// The same map re-expressed with modulus 2; requires constant_on_doubles().
  SignMap coarsen() const;
  bool is_trivial() const;

  friend bool operator==(const SignMap&, const SignMap&) = default;

 private:
  Group group_;
  int modulus_ = 2;
  std::vector<int> v_;
};

/// f = exp(P + l + r), g = exp(P + m - r).
struct PositiveSolutionForm {
  QuadraticForm P;
  AdditiveMap l;
  AdditiveMap m;
  CosetConstantMap r;

  static PositiveSolutionForm zero(const Group& g);
  const Group& group() const { return P.group(); }
  friend bool operator==(const PositiveSolutionForm&, const PositiveSolutionForm&) = default;
};

/// f = sign_f * alpha * a * exp(P + r), g = sign_g * beta * b * exp(P - r),
/// both zero outside `support` when a support subgroup is present.
///
/// `sign_f`, `sign_g` carry the global sign left over after normalizing
/// f(0), g(0) to positive values.
struct HermitianSolutionForm {
  CharacterSpec alpha;
  CharacterSpec beta;
  SignMap a;
  SignMap b;
  QuadraticForm P;
  CosetConstantMap r;
  std::optional<Subgroup> support;
  int sign_f = 1;
  int sign_g = 1;

  static HermitianSolutionForm trivial(const Group& g);
  const Group& group() const { return P.group(); }
};

std::pair<Value, Value> eval_positive(const PositiveSolutionForm& form, const Element& x);
std::pair<Value, Value> eval_hermitian(const HermitianSolutionForm& form, const Element& x);

/// Dense tables for f and g; kind positive.
std::pair<FuncTable, FuncTable> synth_table(const PositiveSolutionForm& form, const Domain& domain);

/// Dense tables for a Hermitian form that meets the sufficient condition for
/// solving the equation: a and b constant on X^(2)-cosets, a*b = 1,
/// sign_f = sign_g, and for a support subgroup X^(2) = X with X/G free of
/// elements of order 2. Other forms are rejected with InvalidArgument.
std::pair<FuncTable, FuncTable> synth_table(const HermitianSolutionForm& form, const Domain& domain);

/// Renders any Hermitian form without the solution guarantee.
std::pair<FuncTable, FuncTable> render_tables(const HermitianSolutionForm& form, const Domain& domain);

/// Table of a single structured component over a domain.
RealTable render(const QuadraticForm& p, const Domain& d);
RealTable render(const AdditiveMap& l, const Domain& d);
RealTable render(const CosetConstantMap& r, const Domain& d);
FuncTable render(const CharacterSpec& alpha, const Domain& d);
FuncTable render(const SignMap& a, const Domain& d);

}  // namespace kbfe
