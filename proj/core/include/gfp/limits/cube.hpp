#pragma once

#include <vector>

#include "gfp/kernel/point.hpp"
#include "gfp/numerics/estimate.hpp"
#include "gfp/perimeter/config.hpp"

namespace gfp {

struct CubeExperiment {
  Point x0;
  std::vector<double> r_list;
  std::vector<double> s_list;
  int normal_axis = -1;  ///< defaults to the last axis
  /// Smallest OU time of the grid as a multiple of r^2.
  double t_min_scale = 1e-4;

  void validate() const;
};

struct CubeRow {
  double r = 0.0;
  double s = 0.0;
  Estimate normalized;   ///< r^{-(N-1)} (1 - s) I(Q_r^+, Q_r^-)
  double target = 0.0;   ///< 2^{-(N-2)/2} pi^{-(N+1)/2} e^{-|x0|^2/2}
  double upper_bound = 0.0;  ///< e^{-|x0|^2/2} / (s 2^{(N-1-s)/2} pi^{(N+1)/2})
  double limit_ratio = 0.0;  ///< normalized / ((2 pi)^{-(N-1)/2} e^{-|x0|^2/2}), tends to sqrt(2)/pi

  double relative_error() const { return std::abs(normalized.value / target - 1.0); }
};

struct CubeResult {
  std::vector<CubeRow> rows;  ///< r outer (as given), s inner
  /// Smallest C with normalized <= upper_bound (1 + C r) on every row.
  double calibrated_C = 0.0;
};

/// Interaction of the two halves of the cube of side r centred at x0, split
/// by the hyperplane through x0 orthogonal to normal_axis, by heat-mc with X
/// drawn inside the cube. The sample budget is mc.samples for every r; the
/// grid starts at t_min_scale * r^2 (mc.t_min is not used).
CubeResult cube_density(const CubeExperiment& exp, const McConfig& mc = {});

}  // namespace gfp
