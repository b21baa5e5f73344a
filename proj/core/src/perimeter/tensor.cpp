#include "gfp/perimeter/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gfp/geometry/intervals.hpp"
#include "gfp/geometry/slicing.hpp"
#include "gfp/numerics/errors.hpp"
#include "gfp/numerics/quadrature.hpp"
#include "gfp/numerics/special.hpp"

namespace gfp {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;
constexpr double kReach = 9.0;
constexpr double kDirectFromTime = 0.02;

void check_dim(const SetExpr& a) {
  if (a.dim() < 1 || a.dim() > 2) throw DomainError("the tensor-quadrature engine supports N <= 2");
}

QuadratureSpec gk_spec(double rel_tol, double abs_tol) {
  QuadratureSpec spec;
  spec.scheme = QuadratureScheme::AdaptiveSplit;
  spec.rel_tol = rel_tol;
  spec.abs_tol = abs_tol;
  spec.max_evals = 20000;
  return spec;
}

Estimate integrate_soft(const Integrand& f, Interval iv, const QuadratureSpec& spec) {
  bool converged = false;
  return integrate_1d_best(f, iv, spec, converged);
}

Estimate pieces_soft(const Integrand& f, const std::vector<double>& br, const QuadratureSpec& spec) {
  Estimate total;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    const double p = br[i];
    const double q = br[i + 1];
    if (!(q > p)) continue;
    const double half = 0.5 * (q - p);
    const auto piece = integrate_soft(
        [&](double th) { return f(p + half * (1.0 - std::cos(th))) * half * std::sin(th); }, {0.0, kPi}, spec);
    total.value += piece.value;
    total.error += piece.error;
    total.evals += piece.evals;
  }
  return total;
}

// Primitives of A under x = (u - w)/sqrt2 (sign = -1) or of B under y = (u + w)/sqrt2 (sign = +1).
void map_primitives(const std::vector<Primitive>& in, const double* w, int n, double sign,
                    std::vector<Primitive>& out) {
  for (const auto& p : in) {
    if (const auto* h = std::get_if<Hyperplane>(&p)) {
      double mw = 0.0;
      for (int i = 0; i < n; ++i) mw += h->normal[i] * w[i];
      out.push_back(Hyperplane{h->normal, kSqrt2 * h->offset - sign * mw});
    } else {
      const auto& sp = std::get<Sphere>(p);
      Point c(n);
      for (int i = 0; i < n; ++i) c[i] = kSqrt2 * sp.center[i] - sign * w[i];
      out.push_back(Sphere{c, kSqrt2 * sp.radius});
    }
  }
}

struct PairSetup {
  SetExpr a;
  SetExpr b;
  int n = 1;
  double var_plus = 2.0;
  double var_minus = 0.0;
  std::vector<Primitive> prims_a;
  std::vector<Primitive> prims_b;
  double rel_tol = 1e-7;
};

void interval_endpoint_gap(const IntervalSet& a, const IntervalSet& b, std::vector<double>& out) {
  for (const auto& ia : a)
    for (const auto& ib : b)
      for (double ea : {ia.lo, ia.hi})
        for (double eb : {ib.lo, ib.hi})
          if (std::isfinite(ea) && std::isfinite(eb)) out.push_back(eb - ea);
}

// N = 1: G(w) = N(0, 1 + rho) mass of (sqrt2 A + w) cap (sqrt2 B - w).
Estimate pair_correlation_1d(const PairSetup& ps) {
  const Point origin{0.0};
  const Point dir{1.0};
  const IntervalSet ia = intervals_along(ps.a, origin, dir);
  const IntervalSet ib = intervals_along(ps.b, origin, dir);
  const double sm = std::sqrt(ps.var_minus);
  const auto g = [&](double z) {
    const double w = sm * z;
    IntervalSet sa, sb;
    for (const auto& iv : ia) sa.push_back({kSqrt2 * iv.lo + w, kSqrt2 * iv.hi + w});
    for (const auto& iv : ib) sb.push_back({kSqrt2 * iv.lo - w, kSqrt2 * iv.hi - w});
    return normal_pdf(z) * normal_mass(interval_intersection(sa, sb), ps.var_plus);
  };
  std::vector<double> gaps;
  interval_endpoint_gap(ia, ib, gaps);
  std::vector<double> br{-kReach, 0.0, kReach};
  for (double d : gaps) {
    const double z = d / (kSqrt2 * sm);
    if (std::abs(z) < kReach) br.push_back(z);
  }
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  return pieces_soft(g, br, gk_spec(0.1 * ps.rel_tol, 1e-17));
}

// N = 2.
double slice_mass(const PairSetup& ps, const double* w, double u1) {
  const Point d{0.0, 1.0 / kSqrt2};
  const Point pa{(u1 - w[0]) / kSqrt2, -w[1] / kSqrt2};
  const Point pb{(u1 + w[0]) / kSqrt2, w[1] / kSqrt2};
  const IntervalSet ia = intervals_along(ps.a, pa, d);
  if (ia.empty()) return 0.0;
  const IntervalSet ib = intervals_along(ps.b, pb, d);
  if (ib.empty()) return 0.0;
  return normal_mass(interval_intersection(ia, ib), ps.var_plus);
}

Estimate shifted_overlap(const PairSetup& ps, const double* w, double rel_tol) {
  std::vector<Primitive> prims;
  map_primitives(ps.prims_a, w, 2, -1.0, prims);
  map_primitives(ps.prims_b, w, 2, 1.0, prims);
  PlanarPrimitives planar;
  const Point origin{0.0, 0.0};
  const Point e_s{0.0, 1.0};
  const Point e_t{1.0, 0.0};
  project_primitives(prims, origin, e_s, e_t, planar);
  const double reach = kReach * std::sqrt(ps.var_plus);
  const auto br = slice_breakpoints(planar, -reach, reach);
  const double sd = std::sqrt(ps.var_plus);
  return pieces_soft([&](double u1) { return normal_pdf(u1 / sd) / sd * slice_mass(ps, w, u1); }, br,
                     gk_spec(rel_tol, 1e-17));
}

Estimate pair_correlation_2d(const PairSetup& ps) {
  std::vector<double> angles{0.0, 2.0 * kPi};
  for (const auto* prims : {&ps.prims_a, &ps.prims_b})
    for (const auto& p : *prims)
      if (const auto* h = std::get_if<Hyperplane>(&p)) {
        const double base = std::atan2(h->normal[1], h->normal[0]) + 0.5 * kPi;
        for (double a : {base, base + kPi}) {
          double x = std::fmod(a, 2.0 * kPi);
          if (x < 0.0) x += 2.0 * kPi;
          angles.push_back(x);
        }
      }
  std::sort(angles.begin(), angles.end());
  std::vector<double> br;
  for (double a : angles)
    if (br.empty() || a - br.back() > 1e-12) br.push_back(a);
  if (br.back() < 2.0 * kPi) br.push_back(2.0 * kPi);

  const double sm = std::sqrt(ps.var_minus);
  std::uint64_t evals = 0;
  double inner_error = 0.0;
  const auto radial = [&](double alpha) {
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);
    const auto r_int = integrate_soft(
        [&](double r) {
          if (r == 0.0) return 0.0;
          const double w[2] = {sm * r * ca, sm * r * sa};
          const auto g = shifted_overlap(ps, w, 0.03 * ps.rel_tol);
          evals += g.evals;
          return g.value * r * std::exp(-0.5 * r * r);
        },
        {0.0, kReach}, gk_spec(0.3 * ps.rel_tol, 1e-16));
    inner_error = std::max(inner_error, r_int.error);
    return r_int.value / (2.0 * kPi);
  };
  Estimate total;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    const auto piece = integrate_soft(radial, {br[i], br[i + 1]}, gk_spec(ps.rel_tol, 1e-16));
    total.value += piece.value;
    total.error += piece.error;
  }
  total.error += 2.0 * kPi * inner_error / (2.0 * kPi);
  total.evals = evals;
  return total;
}

// Larger t: J = int_A phi(x) gamma_{rho x, sigma^2}(B) dx, whose inner factor is
// smooth in x; kinks come from the boundary of A only.
Estimate pair_correlation_direct_2d(const PairSetup& ps, double t) {
  const double rho = std::exp(-t);
  const double sd = std::sqrt(-std::expm1(-2.0 * t));
  const Point origin{0.0, 0.0};
  const Point e_s{0.0, 1.0};
  const Point e_t{1.0, 0.0};
  const Point d{0.0, 1.0};
  PlanarPrimitives pa, pb;
  project_primitives(ps.prims_a, origin, e_s, e_t, pa);
  project_primitives(ps.prims_b, origin, e_s, e_t, pb);
  const auto br_a = slice_breakpoints(pa, -kReach, kReach);
  const double reach_b = rho * kReach + kReach * sd;
  const auto br_b = slice_breakpoints(pb, -reach_b, reach_b);

  std::uint64_t evals = 0;
  const auto conditional = [&](double x1, double x2) {
    const double m1 = rho * x1;
    const double m2 = rho * x2;
    std::vector<double> br{m1 - kReach * sd};
    for (double b : br_b)
      if (b > br.front() && b < m1 + kReach * sd) br.push_back(b);
    br.push_back(m1 + kReach * sd);
    const auto est = pieces_soft(
        [&](double y1) {
          IntervalSet ib = intervals_along(ps.b, Point{y1, 0.0}, d);
          for (auto& iv : ib) {
            iv.lo -= m2;
            iv.hi -= m2;
          }
          return normal_pdf((y1 - m1) / sd) / sd * normal_mass(ib, sd * sd);
        },
        br, gk_spec(0.03 * ps.rel_tol, 1e-17));
    evals += est.evals;
    return est.value;
  };
  const auto column = [&](double x1) {
    double acc = 0.0;
    for (const auto& iv : intervals_along(ps.a, Point{x1, 0.0}, d)) {
      const double lo = std::max(iv.lo, -kReach);
      const double hi = std::min(iv.hi, kReach);
      if (!(hi > lo)) continue;
      acc += integrate_soft([&](double x2) { return normal_pdf(x2) * conditional(x1, x2); }, {lo, hi},
                            gk_spec(0.3 * ps.rel_tol, 1e-17))
                 .value;
    }
    return normal_pdf(x1) * acc;
  };
  Estimate out = pieces_soft(column, br_a, gk_spec(ps.rel_tol, 1e-16));
  out.evals = evals;
  return out;
}

}  // namespace

Estimate sliced_measure(const SetExpr& a, double rel_tol) {
  check_dim(a);
  Estimate out;
  out.method = "slicing";
  if (a.dim() == 1) {
    out.value = normal_mass(intervals_along(a, Point{0.0}, Point{1.0}));
    out.evals = 1;
    return out;
  }
  std::vector<Primitive> prims;
  collect_primitives(a, prims);
  PlanarPrimitives planar;
  project_primitives(prims, Point{0.0, 0.0}, Point{0.0, 1.0}, Point{1.0, 0.0}, planar);
  const auto br = slice_breakpoints(planar, -kReach, kReach);
  const auto est = pieces_soft(
      [&](double x1) { return normal_pdf(x1) * normal_mass(intervals_along(a, Point{x1, 0.0}, Point{0.0, 1.0})); },
      br, gk_spec(rel_tol, 1e-17));
  out.value = est.value;
  out.error = est.error;
  out.evals = est.evals;
  return out;
}

Estimate pair_correlation(const SetExpr& a, const SetExpr& b, double t, double rel_tol) {
  check_dim(a);
  if (a.dim() != b.dim()) throw DomainError("pair_correlation: dimension mismatch");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("pair_correlation: t must be positive and finite");
  PairSetup ps;
  ps.a = a;
  ps.b = b;
  ps.n = a.dim();
  ps.var_plus = 1.0 + std::exp(-t);
  ps.var_minus = -std::expm1(-t);
  ps.rel_tol = rel_tol;
  collect_primitives(a, ps.prims_a);
  collect_primitives(b, ps.prims_b);
  Estimate out = ps.n == 1              ? pair_correlation_1d(ps)
                 : t < kDirectFromTime ? pair_correlation_2d(ps)
                                       : pair_correlation_direct_2d(ps, t);
  out.method = "slicing";
  return out;
}

}  // namespace gfp
