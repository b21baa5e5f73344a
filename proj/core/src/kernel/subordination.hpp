#pragma once

#include <functional>

#include "gfp/numerics/estimate.hpp"
#include "gfp/numerics/quadrature.hpp"

namespace gfp::detail {

/// int_0^inf F(t) t^{-sigma/2-1} dt for a positive factor F with F(t) -> limit
/// exponentially fast as t -> inf and F negligible below t_lo.
/// `log_f` returns log F(t).
Estimate subordinate(const std::function<double(double)>& log_f, double limit, double t_lo, double sigma,
                     const QuadratureSpec& spec);

/// Smallest t below which exp(-d2/(4t)) kills every polynomial prefactor of
/// order t^{-power} and the amplification e^{growth}.
double underflow_time(double d2, double growth, double power);

}  // namespace gfp::detail
