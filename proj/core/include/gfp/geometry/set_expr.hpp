#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "gfp/geometry/intervals.hpp"
#include "gfp/kernel/point.hpp"

namespace gfp {

/// Immutable algebraic description of a measurable subset of R^N.
///
/// Leaves are open: Halfspace {x . normal < offset}, Ball {|x - center| < radius},
/// Box {lo < x < hi}, Polytope = intersection of halfspaces. Copies share the
/// underlying tree.
class SetExpr {
 public:
  struct Node;

  SetExpr() = default;

  static SetExpr halfspace(Point normal, double offset);
  /// {sign * x_axis < offset}
  static SetExpr axis_halfspace(int dim, int axis, double offset, int sign = 1);
  static SetExpr ball(Point center, double radius);
  static SetExpr box(Point lo, Point hi);
  static SetExpr polytope(std::vector<struct Halfspace> faces);
  static SetExpr complement(const SetExpr& child);
  static SetExpr union_of(int dim, std::vector<SetExpr> children);
  static SetExpr intersection_of(int dim, std::vector<SetExpr> children);
  static SetExpr whole(int dim) { return intersection_of(dim, {}); }
  static SetExpr empty(int dim) { return union_of(dim, {}); }

  int dim() const { return dim_; }
  const Node& node() const;
  bool valid() const { return static_cast<bool>(node_); }

 private:
  SetExpr(int dim, std::shared_ptr<const Node> node) : node_(std::move(node)), dim_(dim) {}

  std::shared_ptr<const Node> node_;
  int dim_ = 0;
};

struct Halfspace {
  Point normal;
  double offset = 0.0;
};
struct Ball {
  Point center;
  double radius = 1.0;
};
struct Box {
  Point lo;
  Point hi;
};
struct Polytope {
  std::vector<Halfspace> faces;
};
struct Complement {
  SetExpr child;
};
struct Union {
  std::vector<SetExpr> children;
};
struct Intersection {
  std::vector<SetExpr> children;
};

struct SetExpr::Node {
  std::variant<Halfspace, Ball, Box, Polytope, Complement, Union, Intersection> value;
};

/// Membership with strict leaf inequalities. Throws DomainError on a
/// dimension mismatch.
bool contains(const SetExpr& e, PointView x);

/// Parameters tau (sorted open intervals) with p + tau * d in e.
IntervalSet intervals_along(const SetExpr& e, PointView p, PointView d);

struct BoundingBox {
  Point lo;
  Point hi;
  bool bounded() const;
};

/// Axis-aligned box containing e; unbounded directions are +-infinity.
BoundingBox bounding_box(const SetExpr& e);

/// Boundary pieces of the leaves, used to locate kinks of slice functions.
struct Hyperplane {
  Point normal;
  double offset = 0.0;
};
struct Sphere {
  Point center;
  double radius = 1.0;
};
using Primitive = std::variant<Hyperplane, Sphere>;

void collect_primitives(const SetExpr& e, std::vector<Primitive>& out);

/// Short tag such as "halfspace", "ball", "complement(box)".
std::string describe(const SetExpr& e);

/// True for halfspaces, boxes, polytopes and their complements: the family for
/// which the Gamma-limit is established pointwise. Other sets are exploratory.
bool is_polyhedral(const SetExpr& e);

}  // namespace gfp
