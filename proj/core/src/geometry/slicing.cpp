#include "gfp/geometry/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gfp {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void line_circle(const PlanarLine& l, const PlanarCircle& c, std::vector<double>& taus) {
  const double norm = std::hypot(l.a, l.b);
  const double a = l.a / norm, b = l.b / norm, k = l.c / norm;
  const double dist = k - (a * c.cs + b * c.ct);
  if (std::abs(dist) >= c.r) return;
  const double half = std::sqrt(c.r * c.r - dist * dist);
  // Foot of the perpendicular plus/minus half-chord along the line direction (-b, a).
  const double ft = c.ct + dist * b;
  taus.push_back(ft + half * a);
  taus.push_back(ft - half * a);
}

void circle_circle(const PlanarCircle& p, const PlanarCircle& q, std::vector<double>& taus) {
  const double ds = q.cs - p.cs, dt = q.ct - p.ct;
  const double d = std::hypot(ds, dt);
  if (d == 0.0 || d >= p.r + q.r || d <= std::abs(p.r - q.r)) return;
  const double along = (p.r * p.r - q.r * q.r + d * d) / (2.0 * d);
  const double h = std::sqrt(std::max(0.0, p.r * p.r - along * along));
  const double mt = p.ct + along * dt / d;
  taus.push_back(mt + h * ds / d);
  taus.push_back(mt - h * ds / d);
}

}  // namespace

void project_primitives(const std::vector<Primitive>& prims, PointView origin, PointView e_s, PointView e_t,
                        PlanarPrimitives& out) {
  for (const Primitive& prim : prims) {
    std::visit(Overloaded{
                   [&](const Hyperplane& h) {
                     const double a = dot(h.normal, e_s), b = dot(h.normal, e_t);
                     if (std::abs(a) + std::abs(b) < 1e-14) return;
                     out.lines.push_back({a, b, h.offset - dot(h.normal, origin)});
                   },
                   [&](const Sphere& s) {
                     double d2 = 0.0, ds = 0.0, dt = 0.0;
                     for (std::size_t i = 0; i < origin.size(); ++i) {
                       const double d = origin[i] - s.center[i];
                       d2 += d * d;
                       ds += d * e_s[i];
                       dt += d * e_t[i];
                     }
                     const double r2 = s.radius * s.radius - (d2 - ds * ds - dt * dt);
                     if (r2 <= 0.0) return;
                     out.circles.push_back({-ds, -dt, std::sqrt(r2)});
                   },
               },
               prim);
  }
}

std::vector<double> slice_breakpoints(const PlanarPrimitives& prims, double lo, double hi) {
  std::vector<double> taus;
  const auto& L = prims.lines;
  const auto& C = prims.circles;
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (std::abs(L[i].a) < 1e-14 * std::abs(L[i].b)) taus.push_back(L[i].c / L[i].b);
    for (std::size_t j = i + 1; j < L.size(); ++j) {
      const double det = L[i].a * L[j].b - L[j].a * L[i].b;
      if (std::abs(det) < 1e-14) continue;
      taus.push_back((L[i].a * L[j].c - L[j].a * L[i].c) / det);
    }
    for (const PlanarCircle& c : C) line_circle(L[i], c, taus);
  }
  for (std::size_t i = 0; i < C.size(); ++i) {
    taus.push_back(C[i].ct - C[i].r);
    taus.push_back(C[i].ct + C[i].r);
    for (std::size_t j = i + 1; j < C.size(); ++j) circle_circle(C[i], C[j], taus);
  }
  std::vector<double> out{lo};
  std::sort(taus.begin(), taus.end());
  const double min_gap = 1e-13 * std::max(1.0, hi - lo);
  for (double t : taus)
    if (std::isfinite(t) && t > out.back() + min_gap && t < hi - min_gap) out.push_back(t);
  out.push_back(hi);
  return out;
}

Estimate integrate_pieces(const std::function<double(double)>& f, const std::vector<double>& breakpoints,
                          const QuadratureSpec& spec) {
  Estimate total{0.0, 0.0, 0, "sliced"};
  QuadratureSpec piece = spec;
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    const double p = breakpoints[k], q = breakpoints[k + 1];
    const double half = 0.5 * (q - p);
    auto g = [&](double th) { return f(p + half * (1.0 - std::cos(th))) * half * std::sin(th); };
    const Estimate e = integrate_1d(g, {0.0, std::numbers::pi}, piece);
    total.value += e.value;
    total.error += e.error;
    total.evals += e.evals;
  }
  return total;
}

}  // namespace gfp
