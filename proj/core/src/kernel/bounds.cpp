#include "gfp/kernel/bounds.hpp"

#include <cmath>
#include <numbers>

#include "gfp/kernel/subordinated.hpp"
#include "gfp/numerics/errors.hpp"
#include "gfp/numerics/special.hpp"
#include "subordination.hpp"

namespace gfp {

double kernel_lower_bound(PointView x, PointView y, double s) {
  const int dim = static_cast<int>(x.size());
  const double d = std::sqrt(squared_distance(x, y));
  if (d == 0.0) throw SingularityError("kernel_lower_bound: x = y");
  return c_lower(dim, s) * std::pow(d, -(dim + s));
}

Estimate kernel_upper_bound(PointView x, PointView y, double s, const QuadratureSpec& spec) {
  const double d = std::sqrt(squared_distance(x, y));
  if (d == 0.0) throw SingularityError("kernel_upper_bound: x = y");
  Estimate kt = k_tilde(d, s, static_cast<int>(x.size()), spec);
  const double factor = std::exp(0.25 * (squared_norm(x) + squared_norm(y)));
  kt.value *= factor;
  kt.error *= factor;
  return kt;
}

SummabilityReport summability_check(int dim, double s, double a, double radius, const QuadratureSpec& spec) {
  if (dim < 1) throw DomainError("summability_check: dimension must be >= 1");
  if (!(s > 0.0 && s < 1.0)) throw DomainError("summability_check: s must lie in (0, 1)");
  if (!(a > 0.0) || !(radius > 0.0)) throw DomainError("summability_check: a and R must be positive");
  const double n = dim;
  const double area = unit_sphere_area(dim);  // N omega_N
  const double R = radius;
  const double R2 = R * R;

  SummabilityReport rep;
  rep.dim = dim;
  rep.s = s;
  rep.a = a;
  rep.radius = R;

  // Near part: N w_N int_0^R rho^N exp(-rho^2/c) d rho with c = 4 sinh t equals
  // N w_N (c^{(N+1)/2} / 2) Gamma((N+1)/2) P((N+1)/2, R^2/c).
  const double g_near = gamma_function(0.5 * (n + 1.0));
  auto log_near = [&](double t) {
    const double c = 4.0 * std::sinh(t);
    const double p = chi_square_cdf(2.0 * R2 / c, dim + 1);
    return std::log(area * 0.5 * g_near * p) + 0.5 * (n + 1.0) * std::log(c) -
           0.5 * n * std::log(-std::expm1(-2.0 * t));
  };
  const double near_limit = area * std::pow(R, n + 1.0) / (n + 1.0);
  rep.near = detail::subordinate(log_near, near_limit, 1e-300, s, spec);

  // Far part: N w_N int_R^inf rho^{N-1} exp(-b rho^2) d rho with b = a + 1/c
  // equals N w_N b^{-N/2} Gamma(N/2) Q(N/2, b R^2) / 2.
  const double g_far = gamma_function(0.5 * n);
  auto log_far = [&](double t) {
    const double b = a + 1.0 / (4.0 * std::sinh(t));
    const double q = 1.0 - chi_square_cdf(2.0 * b * R2, dim);
    if (!(q > 0.0)) return -std::numeric_limits<double>::infinity();
    return std::log(area * 0.5 * g_far * q) - 0.5 * n * std::log(b) - 0.5 * n * std::log(-std::expm1(-2.0 * t));
  };
  const double far_limit = area * 0.5 * g_far * std::pow(a, -0.5 * n) * (1.0 - chi_square_cdf(2.0 * a * R2, dim));
  const double t_lo = detail::underflow_time(R2, 0.0, 0.5 * n + 0.5 * s + 2.0);
  rep.far = detail::subordinate(log_far, far_limit, t_lo, s, spec);

  const double e = std::numbers::e;
  rep.near_bound = area * (std::pow(R, n + 1.0) / (n + 1.0) * 2.0 / (s * (1.0 - std::exp(-2.0))) +
                           std::pow(2.0, 0.5 * (n + 3.0)) * g_near * std::pow(e, 0.5 * (n + 1.0)) / (1.0 - s));
  rep.far_bound = 4.0 * std::pow(std::numbers::pi, 0.5 * n) / s * std::pow(R, -0.5 * s) *
                  (1.0 / (2.0 * std::sqrt(a) * std::pow(-std::expm1(-2.0 * R), 0.5 * n)) + 1.0 / (2.0 * std::pow(a, 0.5 * n)));
  return rep;
}

}  // namespace gfp
