#include "gfp/perimeter/halfspace.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "gfp/numerics/errors.hpp"
#include "gfp/numerics/special.hpp"

namespace gfp {

namespace {

constexpr double kPi = std::numbers::pi;

void check_order(double s) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("fractional order s must lie in (0, 1)");
}

// (1/2pi) int_0^theta [e^{-a^2/(1+cos phi)} - e^{-a^2/2}] dphi, using
// a^2/(1+cos phi) - a^2/2 = (a^2/2) tan^2(phi/2).
double head_defect(double a, double theta) {
  if (a == 0.0) return 0.0;
  const double h = 0.5 * a * a;
  const double inner = gauss_legendre_integrate(
      [h](double phi) {
        const double tn = std::tan(0.5 * phi);
        return std::expm1(-h * tn * tn);
      },
      0.0, theta, 20);
  return std::exp(-h) * inner / (2.0 * kPi);
}

// J(inf) - J(t) = (1/2pi) int_{arccos rho}^{pi/2} e^{-a^2/(1+cos phi)} dphi.
double tail_defect(double a, double t) {
  const double width = std::asin(std::exp(-t));
  if (width == 0.0) return 0.0;
  const double a2 = a * a;
  return gauss_legendre_integrate([a2](double phi) { return std::exp(-a2 / (1.0 + std::cos(phi))); },
                                  0.5 * kPi - width, 0.5 * kPi, 20) /
         (2.0 * kPi);
}

}  // namespace

double halfspace_heat_correlation(double a, double t) {
  if (!(t >= 0.0)) throw DomainError("halfspace_heat_correlation: t must be nonnegative");
  return orthant_prob_angle(a, ou_angle(t));
}

Estimate halfspace_frac_perimeter(double a, double s, const QuadratureSpec& spec) {
  check_order(s);
  spec.validate();
  if (!std::isfinite(a)) return {0.0, 0.0, 0, "exact"};
  QuadratureSpec inner = spec;
  if (inner.scheme == QuadratureScheme::GaussHermite) inner.scheme = QuadratureScheme::DoubleExponential;

  const double T = spec.split_T;
  const double c = 0.5 * (1.0 - s);
  const double kappa = std::exp(-0.5 * a * a) / (std::numbers::sqrt2 * kPi);
  const double j_inf = normal_cdf(a) * normal_sf(a);

  const auto head = integrate_1d(
      [&](double t) {
        if (t <= 0.0) return 0.0;
        const double theta = ou_angle(t);
        const double defect =
            head_defect(a, theta) + std::exp(-0.5 * a * a) * (theta - std::sqrt(2.0 * t)) / (2.0 * kPi);
        return std::pow(t, -0.5 * s - 1.0) * defect;
      },
      {0.0, T}, inner);
  const auto tail = integrate_1d(
      [&](double t) { return std::pow(t, -0.5 * s - 1.0) * tail_defect(a, t); }, {T, kInf}, inner);

  Estimate out;
  out.value = kappa * std::pow(T, c) / c + head.value + j_inf * (2.0 / s) * std::pow(T, -0.5 * s) - tail.value;
  out.error = head.error + tail.error + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(out.value);
  out.evals = head.evals + tail.evals;
  out.method = "semi-analytic";
  return out;
}

Estimate isoperimetric_function(double m, double s, const QuadratureSpec& spec) {
  if (!(m > 0.0 && m < 1.0)) throw DomainError("isoperimetric_function: m must lie in (0, 1)");
  return halfspace_frac_perimeter(normal_quantile(m), s, spec);
}

}  // namespace gfp
