#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gfp {

using Point = std::vector<double>;
using PointView = std::span<const double>;

inline double dot(PointView x, PointView y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline double squared_norm(PointView x) { return dot(x, x); }

inline double squared_distance(PointView x, PointView y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

}  // namespace gfp
