#pragma once

#include <string>
#include <vector>

#include "gfp/geometry/domain.hpp"
#include "gfp/geometry/set_expr.hpp"
#include "gfp/numerics/estimate.hpp"
#include "gfp/perimeter/config.hpp"

namespace gfp {

/// sqrt(2) / pi
inline constexpr double kGammaLimitConstant = 0.45015815807855303;

struct SweepRow {
  double s = 0.0;
  Estimate perimeter;  ///< local + nonlocal
  double scaled = 0.0;  ///< (1 - s) * perimeter
  double error = 0.0;   ///< (1 - s) * perimeter.error
};

struct SweepResult {
  std::vector<SweepRow> rows;  ///< sorted by s
  double extrapolated = 0.0;
  double extrapolated_error = 0.0;
  double slope = 0.0;
  double reference = 0.0;
  double relative_gap = 0.0;
  std::string model = "linear in (1-s), least squares";
  /// Neither polyhedral nor a ball: the pointwise limit is not established.
  bool exploratory = false;
};

/// Least-squares fit scaled = c0 + c1 (1 - s); returns {c0, c1, bound on the
/// error of c0 from the row errors, valid under any correlation between rows}.
struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double intercept_error = 0.0;
};
LinearFit fit_linear_in_gap(const std::vector<SweepRow>& rows);

/// (1 - s) P_s^gamma(E; Omega) over s_list, extrapolated to s = 1 and compared
/// with (sqrt(2)/pi) P^gamma(E; Omega). Requires max(s_list) >= 0.99.
SweepResult gamma_limit_sweep(const SetExpr& e, const Domain& omega, std::vector<double> s_list, Engine engine,
                              const McConfig& mc = {}, const TensorConfig& tensor = {});

}  // namespace gfp
