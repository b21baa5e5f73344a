#pragma once

#include <vector>

#include "gfp/geometry/domain.hpp"
#include "gfp/geometry/set_expr.hpp"
#include "gfp/numerics/estimate.hpp"
#include "gfp/perimeter/config.hpp"

namespace gfp {

/// Local part int_{E cap Omega} int_{E^c cap Omega} K_s dgamma dgamma.
///
/// HeatMc samples X from gamma restricted to the bounding box of a bounded
/// Omega; TensorQuadrature requires N <= 2; SemiAnalytic covers halfspaces in
/// the whole space. E empty or the whole space gives an exact 0.
Estimate frac_perimeter_local(const SetExpr& e, const Domain& omega, double s, Engine engine,
                              const McConfig& mc = {}, const TensorConfig& tensor = {});

/// Cross terms with Omega^c by heat-mc; exact 0 when Omega is the whole space.
Estimate frac_perimeter_nonlocal(const SetExpr& e, const Domain& omega, double s, const McConfig& mc = {});

PerimeterResult frac_perimeter(const SetExpr& e, const Domain& omega, double s, Engine engine,
                               const McConfig& mc = {}, const TensorConfig& tensor = {});

/// Several orders from one set of samples (heat-mc) or one set of J(t)
/// evaluations (tensor-quadrature). Rows follow the order of s_list.
std::vector<PerimeterResult> frac_perimeter_sweep(const SetExpr& e, const Domain& omega,
                                                  const std::vector<double>& s_list, Engine engine,
                                                  const McConfig& mc = {}, const TensorConfig& tensor = {});

/// Local parts only, for several orders.
std::vector<Estimate> frac_perimeter_local_sweep(const SetExpr& e, const Domain& omega,
                                                 const std::vector<double>& s_list, Engine engine,
                                                 const McConfig& mc = {}, const TensorConfig& tensor = {});

}  // namespace gfp
