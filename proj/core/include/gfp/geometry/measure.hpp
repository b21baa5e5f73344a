#pragma once

#include <cstdint>
#include <vector>

#include "gfp/geometry/domain.hpp"
#include "gfp/geometry/set_expr.hpp"
#include "gfp/numerics/estimate.hpp"
#include "gfp/numerics/rng.hpp"

namespace gfp {

enum class MeasureMethod { ExactIfAvailable, MonteCarlo };

/// gamma_N(e). The exact path covers halfspaces, origin-centred balls, boxes,
/// the trivial sets and complements of these, and throws UnsupportedShape
/// otherwise. The Monte Carlo path returns one standard error.
Estimate gaussian_measure(const SetExpr& e, MeasureMethod method = MeasureMethod::ExactIfAvailable,
                          std::uint64_t samples = 1000000, RngStream stream = {});

/// Gaussian perimeter (2 pi)^{-(N-1)/2} int_{FE cap Omega} e^{-|x|^2/2} dH^{N-1}.
///
/// Halfspaces, boxes and polytopes are summed face by face, each face clipped
/// by the remaining faces and by Omega; balls use the closed form when centred
/// at the origin with Omega the whole space and angular quadrature otherwise.
/// Complements share the boundary of their child. Unions and general
/// intersections throw UnsupportedShape, as do clipped faces in N > 3.
Estimate gaussian_perimeter(const SetExpr& e, const Domain& omega);

/// n standard Gaussian points in R^dim, deterministic per stream.
std::vector<Point> sample_gaussian(std::uint64_t n, int dim, const RngStream& stream);

}  // namespace gfp
