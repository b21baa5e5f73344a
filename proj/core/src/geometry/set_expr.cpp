#include "gfp/geometry/set_expr.hpp"

#include <algorithm>
#include <cmath>

#include "gfp/numerics/errors.hpp"

namespace gfp {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void check_finite(const Point& p, const char* what) {
  for (double v : p)
    if (!std::isfinite(v)) throw DomainError(std::string(what) + ": non-finite coordinate");
}

void check_unit(const Point& n) {
  if (n.empty()) throw DomainError("halfspace: empty normal");
  check_finite(n, "halfspace");
  if (std::abs(std::sqrt(squared_norm(n)) - 1.0) > 1e-12) throw DomainError("halfspace: normal must have unit length");
}

IntervalSet halfspace_along(const Halfspace& h, PointView p, PointView d) {
  const double alpha = dot(h.normal, d);
  const double beta = h.offset - dot(h.normal, p);
  if (alpha > 0.0) return {{-kInf, beta / alpha}};
  if (alpha < 0.0) return {{beta / alpha, kInf}};
  if (beta > 0.0) return {{-kInf, kInf}};
  return {};
}

IntervalSet ball_along(const Ball& b, PointView p, PointView d) {
  double a = 0.0, half_b = 0.0, c = -b.radius * b.radius;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double q = p[i] - b.center[i];
    a += d[i] * d[i];
    half_b += d[i] * q;
    c += q * q;
  }
  if (a == 0.0) {
    if (c < 0.0) return {{-kInf, kInf}};
    return {};
  }
  const double disc = half_b * half_b - a * c;
  if (disc <= 0.0) return {};
  // Stable roots of a tau^2 + 2 half_b tau + c.
  const double sq = std::sqrt(disc);
  const double q = -(half_b + std::copysign(sq, half_b));
  double r1 = q / a;
  double r2 = q != 0.0 ? c / q : -r1;
  if (r1 > r2) std::swap(r1, r2);
  return {{r1, r2}};
}

IntervalSet box_along(const Box& b, PointView p, PointView d) {
  double lo = -kInf, hi = kInf;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (d[i] == 0.0) {
      if (!(p[i] > b.lo[i] && p[i] < b.hi[i])) return {};
      continue;
    }
    double t1 = (b.lo[i] - p[i]) / d[i];
    double t2 = (b.hi[i] - p[i]) / d[i];
    if (t1 > t2) std::swap(t1, t2);
    lo = std::max(lo, t1);
    hi = std::min(hi, t2);
  }
  if (lo < hi) return {{lo, hi}};
  return {};
}

}  // namespace

const SetExpr::Node& SetExpr::node() const {
  if (!node_) throw DomainError("SetExpr: empty expression");
  return *node_;
}

SetExpr SetExpr::halfspace(Point normal, double offset) {
  check_unit(normal);
  if (!std::isfinite(offset)) throw DomainError("halfspace: offset must be finite");
  const int dim = static_cast<int>(normal.size());
  return {dim, std::make_shared<const Node>(Node{Halfspace{std::move(normal), offset}})};
}

SetExpr SetExpr::axis_halfspace(int dim, int axis, double offset, int sign) {
  if (dim < 1 || axis < 0 || axis >= dim) throw DomainError("axis_halfspace: bad axis");
  Point n(dim, 0.0);
  n[axis] = sign >= 0 ? 1.0 : -1.0;
  return halfspace(std::move(n), offset);
}

SetExpr SetExpr::ball(Point center, double radius) {
  if (center.empty()) throw DomainError("ball: empty center");
  check_finite(center, "ball");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("ball: radius must be positive");
  const int dim = static_cast<int>(center.size());
  return {dim, std::make_shared<const Node>(Node{Ball{std::move(center), radius}})};
}

SetExpr SetExpr::box(Point lo, Point hi) {
  if (lo.empty() || lo.size() != hi.size()) throw DomainError("box: bounds must have equal, positive dimension");
  check_finite(lo, "box");
  check_finite(hi, "box");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(lo[i] < hi[i])) throw DomainError("box: bounds must be strictly ordered");
  const int dim = static_cast<int>(lo.size());
  return {dim, std::make_shared<const Node>(Node{Box{std::move(lo), std::move(hi)}})};
}

SetExpr SetExpr::polytope(std::vector<Halfspace> faces) {
  if (faces.empty()) throw DomainError("polytope: needs at least one halfspace");
  const std::size_t dim = faces.front().normal.size();
  for (const Halfspace& h : faces) {
    check_unit(h.normal);
    if (h.normal.size() != dim) throw DomainError("polytope: dimension mismatch");
    if (!std::isfinite(h.offset)) throw DomainError("polytope: offset must be finite");
  }
  return {static_cast<int>(dim), std::make_shared<const Node>(Node{Polytope{std::move(faces)}})};
}

SetExpr SetExpr::complement(const SetExpr& child) {
  child.node();
  return {child.dim(), std::make_shared<const Node>(Node{Complement{child}})};
}

SetExpr SetExpr::union_of(int dim, std::vector<SetExpr> children) {
  if (dim < 1) throw DomainError("union: dimension must be >= 1");
  for (const SetExpr& c : children)
    if (c.dim() != dim) throw DomainError("union: dimension mismatch");
  return {dim, std::make_shared<const Node>(Node{Union{std::move(children)}})};
}

SetExpr SetExpr::intersection_of(int dim, std::vector<SetExpr> children) {
  if (dim < 1) throw DomainError("intersection: dimension must be >= 1");
  for (const SetExpr& c : children)
    if (c.dim() != dim) throw DomainError("intersection: dimension mismatch");
  return {dim, std::make_shared<const Node>(Node{Intersection{std::move(children)}})};
}

bool contains(const SetExpr& e, PointView x) {
  if (static_cast<int>(x.size()) != e.dim()) throw DomainError("contains: dimension mismatch");
  return std::visit(
      Overloaded{
          [&](const Halfspace& h) { return dot(h.normal, x) < h.offset; },
          [&](const Ball& b) { return squared_distance(b.center, x) < b.radius * b.radius; },
          [&](const Box& b) {
            for (std::size_t i = 0; i < x.size(); ++i)
              if (!(x[i] > b.lo[i] && x[i] < b.hi[i])) return false;
            return true;
          },
          [&](const Polytope& p) {
            return std::all_of(p.faces.begin(), p.faces.end(),
                               [&](const Halfspace& h) { return dot(h.normal, x) < h.offset; });
          },
          [&](const Complement& c) { return !contains(c.child, x); },
          [&](const Union& u) {
            return std::any_of(u.children.begin(), u.children.end(), [&](const SetExpr& c) { return contains(c, x); });
          },
          [&](const Intersection& in) {
            return std::all_of(in.children.begin(), in.children.end(),
                               [&](const SetExpr& c) { return contains(c, x); });
          },
      },
      e.node().value);
}

IntervalSet intervals_along(const SetExpr& e, PointView p, PointView d) {
  if (static_cast<int>(p.size()) != e.dim() || d.size() != p.size())
    throw DomainError("intervals_along: dimension mismatch");
  return std::visit(Overloaded{
                        [&](const Halfspace& h) { return halfspace_along(h, p, d); },
                        [&](const Ball& b) { return ball_along(b, p, d); },
                        [&](const Box& b) { return box_along(b, p, d); },
                        [&](const Polytope& poly) {
                          IntervalSet acc{{-kInf, kInf}};
                          for (const Halfspace& h : poly.faces) {
                            acc = interval_intersection(acc, halfspace_along(h, p, d));
                            if (acc.empty()) break;
                          }
                          return acc;
                        },
                        [&](const Complement& c) { return interval_complement(intervals_along(c.child, p, d)); },
                        [&](const Union& u) {
                          IntervalSet acc;
                          for (const SetExpr& c : u.children) acc = interval_union(acc, intervals_along(c, p, d));
                          return acc;
                        },
                        [&](const Intersection& in) {
                          IntervalSet acc{{-kInf, kInf}};
                          for (const SetExpr& c : in.children) {
                            acc = interval_intersection(acc, intervals_along(c, p, d));
                            if (acc.empty()) break;
                          }
                          return acc;
                        },
                    },
                    e.node().value);
}

bool BoundingBox::bounded() const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!std::isfinite(lo[i]) || !std::isfinite(hi[i])) return false;
  return true;
}

namespace {

BoundingBox unbounded(int dim) { return {Point(dim, -kInf), Point(dim, kInf)}; }

BoundingBox halfspace_box(const Halfspace& h) {
  const int dim = static_cast<int>(h.normal.size());
  BoundingBox b = unbounded(dim);
  // Only axis-aligned halfspaces bound a coordinate.
  int axis = -1;
  for (int i = 0; i < dim; ++i) {
    if (h.normal[i] != 0.0) {
      if (axis >= 0) return b;
      axis = i;
    }
  }
  if (axis < 0) return b;
  if (h.normal[axis] > 0)
    b.hi[axis] = h.offset / h.normal[axis];
  else
    b.lo[axis] = h.offset / h.normal[axis];
  return b;
}

BoundingBox intersect_boxes(const BoundingBox& a, const BoundingBox& b) {
  BoundingBox r = a;
  for (std::size_t i = 0; i < r.lo.size(); ++i) {
    r.lo[i] = std::max(a.lo[i], b.lo[i]);
    r.hi[i] = std::min(a.hi[i], b.hi[i]);
  }
  return r;
}

}  // namespace

BoundingBox bounding_box(const SetExpr& e) {
  const int dim = e.dim();
  return std::visit(Overloaded{
                        [&](const Halfspace& h) { return halfspace_box(h); },
                        [&](const Ball& b) {
                          BoundingBox r{b.center, b.center};
                          for (int i = 0; i < dim; ++i) {
                            r.lo[i] -= b.radius;
                            r.hi[i] += b.radius;
                          }
                          return r;
                        },
                        [&](const Box& b) { return BoundingBox{b.lo, b.hi}; },
                        [&](const Polytope& p) {
                          BoundingBox r = unbounded(dim);
                          for (const Halfspace& h : p.faces) r = intersect_boxes(r, halfspace_box(h));
                          return r;
                        },
                        [&](const Complement&) { return unbounded(dim); },
                        [&](const Union& u) {
                          if (u.children.empty()) return BoundingBox{Point(dim, 0.0), Point(dim, 0.0)};
                          BoundingBox r{Point(dim, kInf), Point(dim, -kInf)};
                          for (const SetExpr& c : u.children) {
                            const BoundingBox cb = bounding_box(c);
                            for (int i = 0; i < dim; ++i) {
                              r.lo[i] = std::min(r.lo[i], cb.lo[i]);
                              r.hi[i] = std::max(r.hi[i], cb.hi[i]);
                            }
                          }
                          return r;
                        },
                        [&](const Intersection& in) {
                          BoundingBox r = unbounded(dim);
                          for (const SetExpr& c : in.children) r = intersect_boxes(r, bounding_box(c));
                          return r;
                        },
                    },
                    e.node().value);
}

void collect_primitives(const SetExpr& e, std::vector<Primitive>& out) {
  std::visit(Overloaded{
                 [&](const Halfspace& h) { out.push_back(Hyperplane{h.normal, h.offset}); },
                 [&](const Ball& b) { out.push_back(Sphere{b.center, b.radius}); },
                 [&](const Box& b) {
                   const int dim = e.dim();
                   for (int i = 0; i < dim; ++i) {
                     Point n(dim, 0.0);
                     n[i] = 1.0;
                     out.push_back(Hyperplane{n, b.lo[i]});
                     out.push_back(Hyperplane{n, b.hi[i]});
                   }
                 },
                 [&](const Polytope& p) {
                   for (const Halfspace& h : p.faces) out.push_back(Hyperplane{h.normal, h.offset});
                 },
                 [&](const Complement& c) { collect_primitives(c.child, out); },
                 [&](const Union& u) {
                   for (const SetExpr& c : u.children) collect_primitives(c, out);
                 },
                 [&](const Intersection& in) {
                   for (const SetExpr& c : in.children) collect_primitives(c, out);
                 },
             },
             e.node().value);
}

std::string describe(const SetExpr& e) {
  return std::visit(Overloaded{
                        [](const Halfspace&) -> std::string { return "halfspace"; },
                        [](const Ball&) -> std::string { return "ball"; },
                        [](const Box&) -> std::string { return "box"; },
                        [](const Polytope&) -> std::string { return "polytope"; },
                        [](const Complement& c) -> std::string { return "complement(" + describe(c.child) + ")"; },
                        [](const Union& u) -> std::string { return u.children.empty() ? "empty" : "union"; },
                        [](const Intersection& in) -> std::string {
                          return in.children.empty() ? "whole" : "intersection";
                        },
                    },
                    e.node().value);
}

bool is_polyhedral(const SetExpr& e) {
  return std::visit(Overloaded{
                        [](const Halfspace&) { return true; },
                        [](const Ball&) { return false; },
                        [](const Box&) { return true; },
                        [](const Polytope&) { return true; },
                        [](const Complement& c) { return is_polyhedral(c.child); },
                        [](const Union& u) { return u.children.empty(); },
                        [](const Intersection& in) {
                          return std::all_of(in.children.begin(), in.children.end(),
                                             [](const SetExpr& c) { return is_polyhedral(c); });
                        },
                    },
                    e.node().value);
}

}  // namespace gfp
