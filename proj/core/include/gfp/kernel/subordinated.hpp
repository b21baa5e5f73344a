#pragma once

#include "gfp/kernel/point.hpp"
#include "gfp/numerics/estimate.hpp"
#include "gfp/numerics/quadrature.hpp"

namespace gfp {

/// K_sigma(x, y) = int_0^inf M_t(x, y) t^{-sigma/2 - 1} dt for sigma > 0.
///
/// The range is split at spec.split_T. The head is integrated in u = -log t,
/// where the t^{-sigma/2-1} weight becomes e^{u sigma/2}. The tail is
/// (2/sigma) T^{-sigma/2} plus the integral of (M_t - 1) t^{-sigma/2-1},
/// with M_t - 1 taken through expm1.
/// Throws SingularityError when x == y.
Estimate k_sigma(PointView x, PointView y, double sigma, const QuadratureSpec& spec);

/// Radial majorant
///   K~_s(r) = int_0^inf exp(-e^t r^2 / (2(e^{2t} - 1))) t^{-s/2-1} (1 - e^{-2t})^{-N/2} dt.
/// Decreasing in r; diverges at r = 0 (DivergenceError).
Estimate k_tilde(double r, double s, int dim, const QuadratureSpec& spec);

/// Euclidean subordination constant 2^s pi^{-N/2} Gamma((N+s)/2), so that
/// int_0^inf H_t(r) t^{-s/2-1} dt = C_euclid(N, s) r^{-(N+s)}.
double c_euclid(int dim, double s);

/// Constant of the Mehler lower bound, 2^{s+N/2} Gamma((s+N)/2).
/// Equals (2 pi)^{N/2} c_euclid(N, s).
double c_lower(int dim, double s);

/// Numerical value of int_0^inf H_t(r) t^{-s/2-1} dt.
Estimate euclidean_subordination(double r, double s, int dim, const QuadratureSpec& spec);

}  // namespace gfp
