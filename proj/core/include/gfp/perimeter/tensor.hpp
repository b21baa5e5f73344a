#pragma once

#include "gfp/geometry/set_expr.hpp"
#include "gfp/numerics/estimate.hpp"

namespace gfp {

/// gamma(A) for N <= 2 by exact slice masses integrated across breakpoints.
Estimate sliced_measure(const SetExpr& a, double rel_tol = 1e-9);

/// Heat correlation J(t) = P(X in A, Y in B) with Y = e^{-t} X + sqrt(1 - e^{-2t}) Z,
/// deterministic for N <= 2.
///
/// With U = (X + Y)/sqrt2 ~ N(0, (1 + rho) I) and W = (Y - X)/sqrt2 ~ N(0, (1 - rho) I)
/// independent, J = E_W gamma_{1+rho}((sqrt2 A + W) cap (sqrt2 B - W)). The inner
/// measure is sliced along the last axis (exact interval masses) and integrated
/// across the breakpoints of the shifted boundaries; W is integrated in polar
/// coordinates with angular breakpoints at directions parallel to flat faces.
/// From t = 0.02 on, N = 2 switches to int_A phi(x) gamma_{rho x, 1 - rho^2}(B) dx,
/// whose inner factor is smooth once the conditional spread is not small.
Estimate pair_correlation(const SetExpr& a, const SetExpr& b, double t, double rel_tol = 1e-7);

}  // namespace gfp
