#include "gfp/geometry/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gfp/numerics/errors.hpp"

namespace gfp {

Domain Domain::whole(int dim) {
  if (dim < 1) throw DomainError("domain: dimension must be >= 1");
  Domain d;
  d.kind_ = Kind::WholeSpace;
  d.dim_ = dim;
  return d;
}

Domain Domain::ball(Point center, double radius) {
  // Reuse SetExpr validation.
  SetExpr::ball(center, radius);
  Domain d;
  d.kind_ = Kind::Ball;
  d.dim_ = static_cast<int>(center.size());
  d.a_ = std::move(center);
  d.radius_ = radius;
  return d;
}

Domain Domain::box(Point lo, Point hi) {
  SetExpr::box(lo, hi);
  Domain d;
  d.kind_ = Kind::Box;
  d.dim_ = static_cast<int>(lo.size());
  d.a_ = std::move(lo);
  d.b_ = std::move(hi);
  return d;
}

bool Domain::contains(PointView x) const {
  if (static_cast<int>(x.size()) != dim_) throw DomainError("domain: dimension mismatch");
  switch (kind_) {
    case Kind::WholeSpace:
      return true;
    case Kind::Ball:
      return squared_distance(a_, x) < radius_ * radius_;
    case Kind::Box:
      for (int i = 0; i < dim_; ++i)
        if (!(x[i] > a_[i] && x[i] < b_[i])) return false;
      return true;
  }
  return false;
}

double Domain::distance_to_boundary(PointView x) const {
  if (static_cast<int>(x.size()) != dim_) throw DomainError("domain: dimension mismatch");
  switch (kind_) {
    case Kind::WholeSpace:
      return kInf;
    case Kind::Ball:
      return std::abs(std::sqrt(squared_distance(a_, x)) - radius_);
    case Kind::Box: {
      if (contains(x)) {
        double d = kInf;
        for (int i = 0; i < dim_; ++i) d = std::min({d, x[i] - a_[i], b_[i] - x[i]});
        return d;
      }
      double s = 0.0;
      bool on_face = true;
      for (int i = 0; i < dim_; ++i) {
        const double excess = std::max({a_[i] - x[i], x[i] - b_[i], 0.0});
        s += excess * excess;
        if (excess > 0.0) on_face = false;
      }
      // Points on the boundary itself have distance zero.
      return on_face ? 0.0 : std::sqrt(s);
    }
  }
  return kInf;
}

SetExpr Domain::as_set() const {
  switch (kind_) {
    case Kind::WholeSpace:
      return SetExpr::whole(dim_);
    case Kind::Ball:
      return SetExpr::ball(a_, radius_);
    case Kind::Box:
      return SetExpr::box(a_, b_);
  }
  return SetExpr::whole(dim_);
}

BoundingBox Domain::bounding_box() const { return gfp::bounding_box(as_set()); }

std::string Domain::describe() const {
  switch (kind_) {
    case Kind::WholeSpace:
      return "whole";
    case Kind::Ball:
      return "ball";
    case Kind::Box:
      return "box";
  }
  return "unknown";
}

bool StripPair::in_outer(PointView x) const {
  if (!omega.bounded()) return false;
  return !omega.contains(x) && omega.distance_to_boundary(x) < delta;
}

bool StripPair::in_inner(PointView x) const {
  if (!omega.bounded()) return false;
  return omega.contains(x) && omega.distance_to_boundary(x) < delta;
}

StripPair strips(const Domain& omega, double delta) {
  if (!(delta > 0.0)) throw DomainError("strips: delta must be positive");
  return {delta, omega};
}

}  // namespace gfp
