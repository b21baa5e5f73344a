#pragma once

#include "gfp/kernel/point.hpp"
#include "gfp/numerics/estimate.hpp"
#include "gfp/numerics/quadrature.hpp"

namespace gfp {

/// Pointwise lower bound K_s(x, y) >= c_lower(N, s) / |x - y|^{N+s}.
double kernel_lower_bound(PointView x, PointView y, double s);

/// Pointwise upper bound K_s(x, y) <= e^{|x|^2/4} e^{|y|^2/4} K~_s(|x - y|).
Estimate kernel_upper_bound(PointView x, PointView y, double s, const QuadratureSpec& spec);

/// Integrability of the radial majorant near the origin and at infinity.
struct SummabilityReport {
  int dim = 1;
  double s = 0.0;
  double a = 0.5;
  double radius = 1.0;
  Estimate near;     ///< int_{B_R} |x| K~_s(|x|) dx
  double near_bound = 0.0;
  Estimate far;      ///< int_{B_R^c} K~_s(|x|) e^{-a|x|^2} dx
  double far_bound = 0.0;

  bool holds() const { return near.value + near.error <= near_bound && far.value + far.error <= far_bound; }
};

/// Evaluates both integrals (radial integration done in closed form through
/// the regularised incomplete gamma, leaving one subordination integral each)
/// and the explicit majorants
///   N w_N (R^{N+1}/(N+1) * 2/(s(1-e^{-2})) + 2^{(N+3)/2} Gamma((N+1)/2) e^{(N+1)/2}/(1-s))
///   (4 pi^{N/2}/s) R^{-s/2} (1/(2 sqrt(a) (1-e^{-2R})^{N/2}) + 1/(2 a^{N/2})).
SummabilityReport summability_check(int dim, double s, double a, double radius, const QuadratureSpec& spec);

}  // namespace gfp
