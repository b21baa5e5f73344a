#include "gfp/kernel/mehler.hpp"

#include <cmath>
#include <numbers>

#include "gfp/numerics/errors.hpp"

namespace gfp {

double log_mehler_from_norms(double t, double sum_sq, double dist_sq, int dim) {
  if (!(t > 0.0)) throw DomainError("mehler: t must be positive");
  const double q = -std::expm1(-2.0 * t);
  const double et = std::exp(-t);
  // e^{-2t}|x|^2 - 2e^{-t} x.y + e^{-2t}|y|^2 rewritten without cancellation.
  const double num = et * dist_sq + et * std::expm1(-t) * sum_sq;
  return -0.5 * dim * std::log(q) - num / (2.0 * q);
}

double log_mehler(double t, PointView x, PointView y) {
  if (x.size() != y.size() || x.empty()) throw DomainError("mehler: dimension mismatch");
  return log_mehler_from_norms(t, squared_norm(x) + squared_norm(y), squared_distance(x, y),
                               static_cast<int>(x.size()));
}

double mehler(double t, PointView x, PointView y) { return std::exp(log_mehler(t, x, y)); }

double gauss_weierstrass(double t, double r, int dim) {
  if (!(t > 0.0)) throw DomainError("gauss_weierstrass: t must be positive");
  if (dim < 1) throw DomainError("gauss_weierstrass: dimension must be >= 1");
  return std::exp(-0.5 * dim * std::log(4.0 * std::numbers::pi * t) - r * r / (4.0 * t));
}

double kernel_ratio_check(PointView x, PointView y, double t) {
  if (!(t > 0.0)) throw DomainError("kernel_ratio_check: t must be positive");
  const int dim = static_cast<int>(x.size());
  const double d2 = squared_distance(x, y);
  const double log_h = -0.5 * dim * std::log(4.0 * std::numbers::pi * t) - d2 / (4.0 * t);
  return std::exp(log_mehler(t, x, y) - log_h);
}

double kernel_ratio_limit(PointView x, PointView y) {
  const int dim = static_cast<int>(x.size());
  return std::pow(2.0 * std::numbers::pi, 0.5 * dim) * std::exp(0.25 * (squared_norm(x) + squared_norm(y)));
}

}  // namespace gfp
