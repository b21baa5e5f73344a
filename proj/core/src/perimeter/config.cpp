#include "gfp/perimeter/config.hpp"

#include <cmath>
#include <string>

#include "gfp/numerics/errors.hpp"

namespace gfp {

void McConfig::validate(double split_T) const {
  if (samples < 1000) throw DomainError("McConfig: samples must be at least 1000");
  if (t_nodes < 4) throw DomainError("McConfig: t_nodes must be at least 4");
  if (!(t_min > 0.0) || !(t_min < split_T) || !(split_T < t_tail) || !std::isfinite(t_tail))
    throw DomainError("McConfig: need 0 < t_min < split_T < t_tail");
  if (!(head_exponent > 0.0)) throw DomainError("McConfig: head_exponent must be positive");
}

void TensorConfig::validate() const {
  if (t_nodes < 5 || t_nodes % 2 == 0) throw DomainError("TensorConfig: t_nodes must be odd and at least 5");
  if (!(t_min > 0.0) || !(t_min < t_tail) || !std::isfinite(t_tail))
    throw DomainError("TensorConfig: need 0 < t_min < t_tail");
  if (!(rel_tol > 0.0) || rel_tol >= 1e-2) throw DomainError("TensorConfig: rel_tol must lie in (0, 1e-2)");
}

std::string_view to_string(Engine engine) {
  switch (engine) {
    case Engine::SemiAnalytic:
      return "semi-analytic";
    case Engine::TensorQuadrature:
      return "tensor-quadrature";
    case Engine::HeatMc:
      return "heat-mc";
  }
  return "unknown";
}

Engine engine_from_string(std::string_view name) {
  if (name == "semi-analytic") return Engine::SemiAnalytic;
  if (name == "tensor-quadrature") return Engine::TensorQuadrature;
  if (name == "heat-mc") return Engine::HeatMc;
  throw DomainError("unknown engine '" + std::string(name) + "'");
}

}  // namespace gfp
