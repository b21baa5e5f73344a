#pragma once

#include <functional>

#include "gfp/geometry/domain.hpp"
#include "gfp/numerics/estimate.hpp"
#include "gfp/perimeter/config.hpp"

namespace gfp {

using PointFunction = std::function<double(PointView)>;

/// [u]^p over Omega with kernel K_{s p}: int_Omega int_Omega |u(x) - u(y)|^p K_{sp} dgamma dgamma.
/// u must take values in [0, 1]; requires 0 < s < 1 and s p < 2. The head fit
/// uses cfg.head_exponent, which should match the small-t scaling of the pair
/// correlation (1/2 for indicators and for p = 1).
Estimate seminorm(const PointFunction& u, const Domain& omega, double s, int p, const McConfig& cfg = {});

struct CoareaResult {
  Estimate lhs;           ///< (1/2) [u]_{W^{s,1}}
  Estimate rhs;           ///< midpoint rule over level sets {u > tau}
  Estimate difference;    ///< lhs - rhs with its common-random-number error
  Estimate discretization;  ///< |rhs(levels) - rhs(levels / 2)|
  int levels = 0;

  /// |lhs - rhs| <= k (difference.error + discretization.value)
  bool consistent(double k = 3.0) const;
};

/// Both sides share every sample. Levels are tau_k = (k + 1/2) / levels.
CoareaResult coarea_check(const PointFunction& u, const Domain& omega, double s, int levels,
                          const McConfig& cfg = {});

}  // namespace gfp
