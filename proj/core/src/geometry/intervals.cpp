#include "gfp/geometry/intervals.hpp"

#include <algorithm>
#include <cmath>

#include "gfp/numerics/special.hpp"

namespace gfp {

IntervalSet interval_intersection(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double lo = std::max(a[i].lo, b[j].lo);
    const double hi = std::min(a[i].hi, b[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi)
      ++i;
    else
      ++j;
  }
  return out;
}

IntervalSet interval_union(const IntervalSet& a, const IntervalSet& b) {
  IntervalSet all;
  all.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(all),
             [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  IntervalSet out;
  for (const Interval& iv : all) {
    if (!out.empty() && iv.lo <= out.back().hi)
      out.back().hi = std::max(out.back().hi, iv.hi);
    else
      out.push_back(iv);
  }
  return out;
}

IntervalSet interval_complement(const IntervalSet& a) {
  IntervalSet out;
  double cursor = -kInf;
  for (const Interval& iv : a) {
    if (cursor < iv.lo) out.push_back({cursor, iv.lo});
    cursor = iv.hi;
  }
  if (cursor < kInf) out.push_back({cursor, kInf});
  return out;
}

double normal_mass(const IntervalSet& set, double variance) {
  const double scale = 1.0 / std::sqrt(variance);
  double m = 0.0;
  for (const Interval& iv : set) m += normal_interval_mass(iv.lo * scale, iv.hi * scale);
  return m;
}

}  // namespace gfp
