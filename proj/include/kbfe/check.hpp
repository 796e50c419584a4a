#pragma once

#include "kbfe/report.hpp"
#include "kbfe/table.hpp"

namespace kbfe {

inline constexpr double kDefaultTol = 1e-9;

/// Delta_h T(x) = T(x + h) - T(x) on the largest box around 0 where both
/// points stay inside T's domain. Throws InvalidArgument when that is empty.
RealTable delta(const RealTable& t, const Element& h);

/// Delta_h^{n+1} T(x) = 0 for every (x, h) whose points x + j h fit.
CheckReport check_polynomial(const RealTable& t, int n, double tol = kDefaultTol);

/// Delta_{2k} Delta_h^2 T(x) = 0 for every (x, h, k) that fits.
/// Cubic in the window size; meant for small windows.
CheckReport check_eq5(const RealTable& t, double tol = kDefaultTol);

/// f(x+y) g(x-y) = f(x) f(y) g(x) g(-y) for every pair whose five points fit.
///
/// Exact comparison when every value is exact; otherwise |lhs - rhs| <= tol,
/// measured on log-moduli when both tables are positive. Zeros are allowed.
CheckReport check_kb(const FuncTable& f, const FuncTable& g, double tol = kDefaultTol);
/// f(x+y) f(x-y) = f(x)^2 f(y) f(-y).
CheckReport check_kb_self(const FuncTable& f, double tol = kDefaultTol);

/// f(-x) = conj(f(x)) at every point.
CheckReport check_hermitian(const FuncTable& f, double tol = kDefaultTol);

/// a(x+y) b(x-y) = a(x) a(y) b(x) b(y) for sign tables.
CheckReport check_sign_eq26(const FuncTable& a, const FuncTable& b);

/// Value depends only on the X^(m)-coset. The witness is the first point of
/// the offending coset and the first point that disagrees with it.
CheckReport check_coset_constant(const FuncTable& t, int modulus, double tol = kDefaultTol);
CheckReport check_coset_constant(const RealTable& t, int modulus, double tol = kDefaultTol);
/// Same check restricted to the single coset x + X^(m).
CheckReport check_coset_constant_at(const FuncTable& t, int modulus, const Element& x, double tol = kDefaultTol);

/// P(x+y) + P(x-y) = 2 P(x) + 2 P(y).
CheckReport check_quadratic(const RealTable& p, double tol = kDefaultTol);
/// l(x+y) = l(x) + l(y).
CheckReport check_cauchy(const RealTable& l, double tol = kDefaultTol);
/// |alpha(x)| = 1 at every point and alpha(x+y) = alpha(x) alpha(y).
CheckReport check_character(const FuncTable& alpha, double tol = kDefaultTol);

}  // namespace kbfe
