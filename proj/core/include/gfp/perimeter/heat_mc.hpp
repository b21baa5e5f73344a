#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gfp/geometry/set_expr.hpp"
#include "gfp/numerics/monte_carlo.hpp"
#include "gfp/perimeter/config.hpp"
#include "gfp/perimeter/time_grid.hpp"

namespace gfp {

/// Generic heat-correlation estimator.
///
/// Each sample draws X ~ gamma (restricted to `proposal` when given, with the
/// mass of the box folded in) and Z ~ gamma, forms Y_k = e^{-t_k} X +
/// sqrt(1 - e^{-2t_k}) Z on every grid node (common random numbers), and
/// scores the pair through point features. The J(inf) term uses the pair (X, Z).
/// Output component j * scores + i is the subordinated value of score i under
/// weights[j].
struct HeatMcProblem {
  int dim = 1;
  std::optional<BoundingBox> proposal;
  int features = 1;
  std::function<void(PointView, std::span<double>)> feature;
  /// Optional: false when every score of X is zero whatever Y is.
  std::function<bool(std::span<const double>)> active;
  int scores = 1;
  std::function<void(std::span<const double>, std::span<const double>, std::span<double>)> score;
  std::vector<SubordinationWeights> weights;
};

VectorMean run_heat_mc(const HeatMcProblem& problem, const LogTimeGrid& grid, std::uint64_t samples,
                       const RngStream& stream);

}  // namespace gfp
