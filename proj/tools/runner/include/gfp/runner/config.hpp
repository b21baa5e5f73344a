#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gfp/limits/isoperimetry.hpp"
#include "gfp/numerics/quadrature.hpp"
#include "gfp/perimeter/config.hpp"
#include "gfp/runner/serialize.hpp"

namespace gfp::runner {

enum class Experiment { KernelIdentity, BoundsAudit, Perimeter, Sweep, CubeDensity, Isoperimetry, Coarea };

std::string_view to_string(Experiment e);
Experiment experiment_from_string(std::string_view name);

/// Pass/fail rules evaluated after a run. Which keys apply depends on the
/// experiment; inapplicable keys are rejected.
struct AcceptanceRules {
  std::optional<double> max_relative_error;
  std::optional<double> max_relative_gap;
  std::optional<double> reference;
  std::optional<double> sigma;
  std::optional<std::uint64_t> max_violations;
  std::optional<bool> monotone;
};

/// u(x) = Phi((x_axis - shift) / scale) ("normal-cdf") or
/// clamp(1/2 + (x_axis - shift) / scale, 0, 1) ("ramp").
struct LevelFunction {
  std::string type = "normal-cdf";
  int axis = 0;
  double shift = 0.0;
  double scale = 1.0;
  double operator()(PointView x) const;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::Perimeter;
  std::optional<SetExpr> set;
  std::optional<Domain> domain;
  std::vector<double> s;
  Engine engine = Engine::HeatMc;
  QuadratureSpec quadrature;
  McConfig mc;
  TensorConfig tensor;
  std::uint64_t seed = 0;
  std::string output;

  std::vector<int> dims;        // kernel-identity, bounds-audit
  std::vector<double> r;        // kernel-identity, cube-density
  std::uint64_t instances = 1000;
  double radius = 1.0;
  double s_lo = 0.05;
  double s_hi = 0.95;

  std::vector<Point> x0;
  double t_min_scale = 1e-4;
  int normal_axis = -1;

  int dim = 2;
  std::vector<double> m;
  std::vector<IsoShape> shapes;

  LevelFunction function;
  int levels = 64;

  AcceptanceRules acceptance;
};

/// Parses and validates; throws ConfigError with a readable message.
ExperimentConfig parse_config(const json& j);
ExperimentConfig load_config(const std::string& path);

/// Fully resolved form: every applicable key with its effective value.
json to_json(const ExperimentConfig& cfg);

/// FNV-1a 64 of the resolved config without the output directory, as hex.
std::string config_hash(const ExperimentConfig& cfg);
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace gfp::runner
