#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace gfp {

/// A computed value together with its uncertainty.
///
/// For deterministic methods `error` is the quadrature's error bound; for
/// stochastic methods it is one standard error.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
  std::uint64_t evals = 0;
  std::string method;

  bool within(double reference, double k) const {
    return std::abs(value - reference) <= k * error;
  }
};

/// Root-sum-square of two independent error bars.
inline double combined_error(const Estimate& a, const Estimate& b) {
  return std::hypot(a.error, b.error);
}

}  // namespace gfp
