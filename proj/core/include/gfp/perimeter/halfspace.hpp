#pragma once

#include "gfp/numerics/estimate.hpp"
#include "gfp/numerics/quadrature.hpp"

namespace gfp {

/// Heat correlation of the halfspace H_a = {x_1 < a}:
/// J(t) = P(X_1 < a, Y_1 > a) with correlation e^{-t}.
double halfspace_heat_correlation(double a, double t);

/// P_s^gamma(H_a; R^N), independent of N:
///   int_0^inf t^{-s/2-1} [Phi(a) - Phi_2(a, a; e^{-t})] dt.
/// The head subtracts kappa sqrt(t), kappa = e^{-a^2/2} / (sqrt(2) pi), and
/// integrates it in closed form; the tail uses J(inf) = Phi(a) Phi(-a).
Estimate halfspace_frac_perimeter(double a, double s, const QuadratureSpec& spec = {});

/// I_s(m) = P_s^gamma of the halfspace with Gaussian measure m.
Estimate isoperimetric_function(double m, double s, const QuadratureSpec& spec = {});

}  // namespace gfp
