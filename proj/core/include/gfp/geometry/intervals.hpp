#pragma once

#include <vector>

#include "gfp/numerics/quadrature.hpp"

namespace gfp {

/// Sorted, pairwise disjoint open intervals on the real line.
using IntervalSet = std::vector<Interval>;

IntervalSet interval_intersection(const IntervalSet& a, const IntervalSet& b);
IntervalSet interval_union(const IntervalSet& a, const IntervalSet& b);
/// Complement in the real line (boundary points are ignored).
IntervalSet interval_complement(const IntervalSet& a);

/// Mass of the set under N(0, variance); exact through normal_interval_mass.
double normal_mass(const IntervalSet& set, double variance = 1.0);

}  // namespace gfp
