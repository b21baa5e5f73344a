#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "gfp/numerics/estimate.hpp"

namespace gfp {

enum class QuadratureScheme {
  AdaptiveSplit,      ///< global adaptive Gauss-Kronrod (7/15)
  DoubleExponential,  ///< tanh-sinh on finite, exp-sinh on half-infinite ranges
  GaussHermite,       ///< order doubling on the whole real line
};

std::string_view to_string(QuadratureScheme scheme);
QuadratureScheme quadrature_scheme_from_string(std::string_view name);

struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::DoubleExponential;
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::uint64_t max_evals = 200000;
  /// Split point in OU time for subordination integrals.
  double split_T = 0.5;

  /// Throws DomainError when an invariant is violated.
  void validate() const;

  double tolerance(double value) const;
};

struct Interval {
  double lo;
  double hi;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

using Integrand = std::function<double(double)>;

/// Integrates f over the interval with the requested scheme.
///
/// Converged results satisfy error <= max(abs_tol, rel_tol * |value|);
/// otherwise NonConvergence is thrown carrying the best estimate.
/// Under DoubleExponential, integrable power singularities t^(b-1) at either
/// finite endpoint are admissible.
Estimate integrate_1d(const Integrand& f, Interval interval, const QuadratureSpec& spec);

/// Same as integrate_1d but returns the best estimate instead of throwing.
/// `converged` reports whether the tolerance was met.
Estimate integrate_1d_best(const Integrand& f, Interval interval, const QuadratureSpec& spec,
                           bool& converged);

/// Nodes and weights of an n-point rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1]. Cached per order.
const QuadratureRule& gauss_legendre(int n);

/// Gauss-Hermite rule for weight exp(-x^2) on the real line. The weights
/// returned are multiplied by exp(x^2), i.e. sum w_i f(x_i) ~ int f.
const QuadratureRule& gauss_hermite_unweighted(int n);

/// Gauss-Hermite rule for the standard normal measure: sum w_i g(x_i) ~ E g(Z).
const QuadratureRule& gauss_hermite_normal(int n);

/// Fixed-order Gauss-Legendre on [a, b].
double gauss_legendre_integrate(const Integrand& f, double a, double b, int n);

}  // namespace gfp
