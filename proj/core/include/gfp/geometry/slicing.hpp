#pragma once

#include <functional>
#include <vector>

#include "gfp/geometry/set_expr.hpp"
#include "gfp/numerics/estimate.hpp"
#include "gfp/numerics/quadrature.hpp"

namespace gfp {

/// Boundary pieces restricted to a 2D affine plane origin + sigma e_s + tau e_t.
/// Lines read a sigma + b tau = c; circles are centred at (cs, ct).
struct PlanarLine {
  double a, b, c;
};
struct PlanarCircle {
  double cs, ct, r;
};
struct PlanarPrimitives {
  std::vector<PlanarLine> lines;
  std::vector<PlanarCircle> circles;
};

/// e_s and e_t must be orthonormal.
void project_primitives(const std::vector<Primitive>& prims, PointView origin, PointView e_s, PointView e_t,
                        PlanarPrimitives& out);

/// Values of tau in (lo, hi) where the sigma-slices of any set built from the
/// primitives can change combinatorially: pairwise intersections, circle
/// extremes and lines of constant tau. Sorted, deduplicated, and framed by lo
/// and hi.
std::vector<double> slice_breakpoints(const PlanarPrimitives& prims, double lo, double hi);

/// Sum over consecutive breakpoints of int f, each piece mapped through
/// tau = p + (q - p)(1 - cos th)/2 so square-root endpoint behaviour of slice
/// lengths is smoothed out.
Estimate integrate_pieces(const std::function<double(double)>& f, const std::vector<double>& breakpoints,
                          const QuadratureSpec& spec);

}  // namespace gfp
