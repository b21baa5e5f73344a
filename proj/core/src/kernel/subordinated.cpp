#include "gfp/kernel/subordinated.hpp"

#include <cmath>
#include <numbers>

#include "gfp/kernel/mehler.hpp"
#include "gfp/numerics/errors.hpp"
#include "gfp/numerics/special.hpp"
#include "subordination.hpp"

namespace gfp {

Estimate k_sigma(PointView x, PointView y, double sigma, const QuadratureSpec& spec) {
  if (x.size() != y.size() || x.empty()) throw DomainError("k_sigma: dimension mismatch");
  if (!(sigma > 0.0)) throw DomainError("k_sigma: sigma must be positive");
  const double d2 = squared_distance(x, y);
  if (d2 == 0.0) throw SingularityError("k_sigma: kernel is singular on the diagonal x = y");
  // Symmetric in (x, y) by construction: only |x|^2 + |y|^2 and |x - y|^2 enter.
  const double sum_sq = squared_norm(x) + squared_norm(y);
  const int dim = static_cast<int>(x.size());
  const double t_lo = detail::underflow_time(d2, 0.25 * sum_sq, 0.5 * dim + 0.5 * sigma + 2.0);
  return detail::subordinate([&](double t) { return log_mehler_from_norms(t, sum_sq, d2, dim); }, 1.0, t_lo,
                             sigma, spec);
}

Estimate k_tilde(double r, double s, int dim, const QuadratureSpec& spec) {
  if (dim < 1) throw DomainError("k_tilde: dimension must be >= 1");
  if (!(s > 0.0)) throw DomainError("k_tilde: s must be positive");
  if (!(r >= 0.0)) throw DomainError("k_tilde: r must be non-negative");
  if (r == 0.0) throw DivergenceError("k_tilde: the radial kernel diverges at r = 0");
  const double r2 = r * r;
  auto log_f = [r2, dim](double t) {
    // e^t / (2(e^{2t} - 1)) = 1 / (4 sinh t)
    return -r2 / (4.0 * std::sinh(t)) - 0.5 * dim * std::log(-std::expm1(-2.0 * t));
  };
  const double t_lo = detail::underflow_time(r2, 0.0, 0.5 * dim + 0.5 * s + 2.0);
  return detail::subordinate(log_f, 1.0, t_lo, s, spec);
}

double c_euclid(int dim, double s) {
  return std::pow(2.0, s) * std::pow(std::numbers::pi, -0.5 * dim) * gamma_function(0.5 * (dim + s));
}

double c_lower(int dim, double s) { return std::pow(2.0, s + 0.5 * dim) * gamma_function(0.5 * (s + dim)); }

Estimate euclidean_subordination(double r, double s, int dim, const QuadratureSpec& spec) {
  if (!(r > 0.0)) throw DivergenceError("euclidean_subordination: r must be positive");
  if (!(s > 0.0)) throw DomainError("euclidean_subordination: s must be positive");
  // No tail subtraction: H_t decays like t^{-N/2}, so integrate in u = log t
  // over the whole line, where the integrand decays exponentially both ways.
  auto f = [&](double u) {
    const double t = std::exp(u);
    return gauss_weierstrass(t, r, dim) * std::pow(t, -0.5 * s);
  };
  const double t_lo = detail::underflow_time(r * r, 0.0, 0.5 * dim + 0.5 * s + 2.0);
  // H_t t^{-s/2} ~ t^{-(N+s)/2}: negligible beyond e^{u_hi}.
  const double u_hi = 2.0 * 800.0 / (dim + s) + std::log(r * r + 1.0);
  Estimate e = integrate_1d(f, {std::log(t_lo), u_hi}, spec);
  e.method = "subordination/" + std::string(to_string(spec.scheme));
  return e;
}

}  // namespace gfp
