#pragma once

#include <cstdint>
#include <string_view>

#include "gfp/geometry/domain.hpp"
#include "gfp/geometry/set_expr.hpp"
#include "gfp/numerics/estimate.hpp"
#include "gfp/numerics/rng.hpp"

namespace gfp {

/// Settings of the heat-correlation Monte Carlo engine.
struct McConfig {
  std::uint64_t samples = 1000000;
  int t_nodes = 48;
  double t_min = 1e-6;
  double t_tail = 40.0;
  RngStream stream{};
  /// J(t) ~ kappa t^beta below t_min; 1/2 for indicator pairs.
  double head_exponent = 0.5;

  /// Throws DomainError unless samples >= 1000, t_nodes >= 4 and
  /// t_min < split_T < t_tail.
  void validate(double split_T = 0.5) const;
};

/// Settings of the deterministic slicing engine (N <= 2). The error bar
/// compares the t-integral on the full grid with the one on every other node.
struct TensorConfig {
  double t_min = 1e-6;
  int t_nodes = 65;
  double t_tail = 40.0;
  double rel_tol = 1e-7;

  void validate() const;
};

enum class Engine { SemiAnalytic, TensorQuadrature, HeatMc };

std::string_view to_string(Engine engine);
Engine engine_from_string(std::string_view name);

struct PerimeterResult {
  Estimate local;
  Estimate nonlocal;
  Estimate total;
  double s = 0.5;
  Engine engine = Engine::HeatMc;
  SetExpr set;
  Domain domain = Domain::whole(1);
};

}  // namespace gfp
