#pragma once

#include <string>

#include "gfp/geometry/set_expr.hpp"

namespace gfp {

/// The open set Omega: the whole space, a ball or a box.
class Domain {
 public:
  enum class Kind { WholeSpace, Ball, Box };

  static Domain whole(int dim);
  static Domain ball(Point center, double radius);
  static Domain box(Point lo, Point hi);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool bounded() const { return kind_ != Kind::WholeSpace; }
  const Point& center() const { return a_; }
  double radius() const { return radius_; }
  const Point& lo() const { return a_; }
  const Point& hi() const { return b_; }

  bool contains(PointView x) const;
  /// Euclidean distance from x to the boundary (infinite for the whole space).
  double distance_to_boundary(PointView x) const;
  SetExpr as_set() const;
  BoundingBox bounding_box() const;
  std::string describe() const;

 private:
  Kind kind_ = Kind::WholeSpace;
  int dim_ = 1;
  Point a_;
  Point b_;
  double radius_ = 0.0;
};

/// Strips of width delta on both sides of the boundary of Omega.
struct StripPair {
  double delta = 0.0;
  Domain omega;

  /// x in Omega^c with d(x, Omega) < delta
  bool in_outer(PointView x) const;
  /// x in Omega with d(x, Omega^c) < delta
  bool in_inner(PointView x) const;
};

/// Throws DomainError for delta <= 0.
StripPair strips(const Domain& omega, double delta);

}  // namespace gfp
