#include "subordination.hpp"

#include <cmath>
#include <string>

#include "gfp/numerics/errors.hpp"

namespace gfp::detail {

namespace {
// Past this horizon e^{-t} is ~1e-35 and every tail excess is negligible.
constexpr double kTailSpan = 80.0;
}  // namespace

double underflow_time(double d2, double growth, double power) {
  double t = d2 / 3200.0;
  for (int i = 0; i < 6; ++i) {
    const double budget = 800.0 + growth + power * std::max(0.0, -std::log(t));
    t = d2 / (4.0 * budget);
  }
  return t;
}

Estimate subordinate(const std::function<double(double)>& log_f, double limit, double t_lo, double sigma,
                     const QuadratureSpec& spec) {
  if (spec.scheme == QuadratureScheme::GaussHermite)
    throw DomainError("subordination integrals need adaptive-split or double-exponential quadrature");
  if (!(sigma > 0.0)) throw DomainError("subordination order must be positive");
  if (!(limit > 0.0)) throw DomainError("subordination limit must be positive");
  const double T = spec.split_T;
  const double half = 0.5 * sigma;

  Estimate head{0.0, 0.0, 0, ""};
  if (t_lo < T) {
    auto f = [&](double u) {
      const double lf = log_f(std::exp(-u));
      return std::exp(lf + half * u);
    };
    head = integrate_1d(f, {-std::log(T), -std::log(t_lo)}, spec);
  }
  const double log_limit = std::log(limit);
  auto excess = [&](double t) { return limit * std::expm1(log_f(t) - log_limit) * std::pow(t, -half - 1.0); };
  Estimate tail = integrate_1d(excess, {T, T + kTailSpan}, spec);
  const double closed = limit * std::pow(T, -half) / half;
  return {head.value + tail.value + closed, head.error + tail.error, head.evals + tail.evals,
          "subordination/" + std::string(to_string(spec.scheme))};
}

}  // namespace gfp::detail
