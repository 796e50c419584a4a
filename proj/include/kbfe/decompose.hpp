#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kbfe/check.hpp"
#include "kbfe/forms.hpp"
#include "kbfe/report.hpp"

namespace kbfe {

/// Smallest box radius on which recovery is attempted. Identities such as
/// T(2x + 2h) are only observable when 2 * (2 e_j) still fits the window.
inline constexpr Coord kMinDecomposeRadius = 4;

/// Throws SizingError when a box window is narrower than `min_radius`.
void require_window(const Domain& d, Coord min_radius = kMinDecomposeRadius);

/// T = A(x, x) + l(x) + c for a polynomial of degree <= 2.
struct Deg2Parts {
  QuadraticForm A;
  AdditiveMap l;
  Real c;
};

/// B_ij = (1/2) Delta_{e_i} Delta_{e_j} T(0), l_j = T(e_j) - T(0) - B_jj,
/// c = T(0), followed by a residual check over the whole window.
/// Throws ValidationError when T is not of degree <= 2 on the window.
Deg2Parts recover_deg2(const RealTable& t, double tol = kDefaultTol);

/// Extends a symmetric biadditive form known on X^(2) to X by
/// A~(x, y) = A(2x, 2y) / 4. `on_doubles[i][j]` = A(2 e_i, 2 e_j) over all
/// coordinates; entries on torsion coordinates must vanish.
QuadraticForm extend_biadditive(const Group& g, const Matrix& on_doubles, double tol = kDefaultTol);

/// Extends an additive map known on X^(2) by l~(x) = l(2x) / 2.
/// `on_doubles[j]` = l(2 e_j) over all coordinates.
AdditiveMap extend_additive(const Group& g, const std::vector<Real>& on_doubles, double tol = kDefaultTol);

struct TParts {
  QuadraticForm P;
  AdditiveMap l;
  CosetConstantMap r;
};

/// T = P + l + r with l the odd part and P + r the even part.
/// Throws SizingError on narrow windows and ValidationError when the
/// residual T - P - l - r is not zero somewhere on the window.
TParts decompose_T(const RealTable& t, double tol = kDefaultTol);

/// Positive solution (f, g) -> (P, l, m, r) with f = exp(P + l + r),
/// g = exp(P + m - r).
PositiveSolutionForm decompose_positive(const FuncTable& f, const FuncTable& g, double tol = kDefaultTol);

/// Character on X from the turns of chi(2 e_j), one per coordinate.
///
/// Free coordinates take half the angle in [0, 1/2). Torsion coordinates of
/// even order take the square root with turn in [0, 1/2); odd orders are
/// determined since doubling is invertible. Approximate turns are converted
/// to nearby rationals first.
CharacterSpec extend_character(const Group& g, const std::vector<Real>& doubled_turns, double tol = kDefaultTol);

/// Hermitian non-vanishing solution -> (alpha, beta, a, b, P, r).
/// Every validation failure throws ValidationError naming the condition.
HermitianSolutionForm decompose_hermitian(const FuncTable& f, const FuncTable& g, double tol = kDefaultTol);

/// f = sign * alpha * a * exp(P) for a Hermitian solution of the f = g equation.
struct SelfSolutionForm {
  CharacterSpec alpha;
  SignMap a;  // modulus 2
  QuadraticForm P;
  int sign = 1;
  /// First pair of coset representatives (x, y), y <= x, with
  /// a(x + y) != a(x) a(y); absent when a is multiplicative.
  std::optional<Witness> non_multiplicative;
};

SelfSolutionForm decompose_self(const FuncTable& f, double tol = kDefaultTol);

/// Solutions that may vanish, on a finite group with X^(2) = X.
///
/// Throws HypothesisError when X^(2) != X. The returned form carries the
/// support subgroup G, characters alpha and beta extended from G to X (first
/// match over the characters of X, at most `budget` of them), trivial sign
/// maps, P = 0 and r the single constant log|f(0)|.
HermitianSolutionForm decompose_vanishing(const FuncTable& f, const FuncTable& g, double tol = kDefaultTol,
                                          std::uint64_t budget = 1u << 20);

}  // namespace kbfe
