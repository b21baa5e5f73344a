#include "gfp/geometry/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "gfp/geometry/slicing.hpp"
#include "gfp/numerics/errors.hpp"
#include "gfp/numerics/monte_carlo.hpp"
#include "gfp/numerics/quadrature.hpp"
#include "gfp/numerics/special.hpp"

namespace gfp {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kExactRel = 1e-15;

std::optional<double> exact_measure(const SetExpr& e) {
  return std::visit(
      Overloaded{
          [](const Halfspace& h) -> std::optional<double> { return normal_cdf(h.offset); },
          [&](const Ball& b) -> std::optional<double> {
            if (squared_norm(b.center) != 0.0) return std::nullopt;
            return chi_square_cdf(b.radius * b.radius, e.dim());
          },
          [](const Box& b) -> std::optional<double> {
            double m = 1.0;
            for (std::size_t i = 0; i < b.lo.size(); ++i) m *= normal_interval_mass(b.lo[i], b.hi[i]);
            return m;
          },
          [](const Polytope& p) -> std::optional<double> {
            if (p.faces.size() == 1) return normal_cdf(p.faces.front().offset);
            return std::nullopt;
          },
          [](const Complement& c) -> std::optional<double> {
            if (auto m = exact_measure(c.child)) return 1.0 - *m;
            return std::nullopt;
          },
          [](const Union& u) -> std::optional<double> {
            if (u.children.empty()) return 0.0;
            return std::nullopt;
          },
          [](const Intersection& in) -> std::optional<double> {
            if (in.children.empty()) return 1.0;
            return std::nullopt;
          },
      },
      e.node().value);
}

// Orthonormal basis of the complement of the unit vector n.
std::vector<Point> orthonormal_complement(const Point& n) {
  const int dim = static_cast<int>(n.size());
  std::vector<Point> basis;
  for (int k = 0; k < dim && static_cast<int>(basis.size()) < dim - 1; ++k) {
    Point v(dim, 0.0);
    v[k] = 1.0;
    const double pn = dot(v, n);
    for (int i = 0; i < dim; ++i) v[i] -= pn * n[i];
    for (const Point& b : basis) {
      const double pb = dot(v, b);
      for (int i = 0; i < dim; ++i) v[i] -= pb * b[i];
    }
    const double len = std::sqrt(squared_norm(v));
    if (len < 1e-8) continue;
    for (double& c : v) c /= len;
    basis.push_back(std::move(v));
  }
  return basis;
}

QuadratureSpec face_spec() {
  QuadratureSpec spec;
  spec.scheme = QuadratureScheme::AdaptiveSplit;
  spec.rel_tol = 1e-11;
  spec.abs_tol = 1e-15;
  spec.max_evals = 400000;
  return spec;
}

// gamma_{N-1} of {v perpendicular to n : c n + v in clip}, times e^{-c^2/2}.
Estimate flat_face(const Point& n, double c, const std::optional<SetExpr>& clip) {
  const double weight = std::exp(-0.5 * c * c);
  if (!clip) return {weight, kExactRel * weight, 1, "face-exact"};
  const int dim = static_cast<int>(n.size());
  Point foot(dim);
  for (int i = 0; i < dim; ++i) foot[i] = c * n[i];
  const std::vector<Point> basis = orthonormal_complement(n);
  switch (dim - 1) {
    case 0: {
      const double v = contains(*clip, foot) ? weight : 0.0;
      return {v, kExactRel * v, 1, "face-exact"};
    }
    case 1: {
      const double v = weight * normal_mass(intervals_along(*clip, foot, basis[0]));
      return {v, kExactRel * v, 1, "face-exact"};
    }
    case 2: {
      auto slice = [&](double tau) {
        Point p = foot;
        for (int i = 0; i < dim; ++i) p[i] += tau * basis[1][i];
        return normal_pdf(tau) * normal_mass(intervals_along(*clip, p, basis[0]));
      };
      std::vector<Primitive> prims;
      collect_primitives(*clip, prims);
      PlanarPrimitives planar;
      project_primitives(prims, foot, basis[0], basis[1], planar);
      Estimate e = integrate_pieces(slice, slice_breakpoints(planar, -12.0, 12.0), face_spec());
      e.value *= weight;
      e.error = e.error * weight + kExactRel * e.value;
      e.method = "face-quadrature";
      return e;
    }
    default:
      throw UnsupportedShape("gaussian_perimeter: clipped faces are supported up to N = 3");
  }
}

std::optional<SetExpr> clip_set(int dim, std::vector<SetExpr> constraints, const Domain& omega) {
  if (omega.bounded()) constraints.push_back(omega.as_set());
  if (constraints.empty()) return std::nullopt;
  return SetExpr::intersection_of(dim, std::move(constraints));
}

Estimate accumulate(const std::vector<Estimate>& parts, const char* method) {
  Estimate total{0.0, 0.0, 0, method};
  for (const Estimate& p : parts) {
    total.value += p.value;
    total.error += p.error;
    total.evals += p.evals;
  }
  return total;
}

Estimate polytope_perimeter(const std::vector<Halfspace>& faces, int dim, const Domain& omega) {
  std::vector<Estimate> parts;
  for (std::size_t k = 0; k < faces.size(); ++k) {
    std::vector<SetExpr> others;
    for (std::size_t j = 0; j < faces.size(); ++j)
      if (j != k) others.push_back(SetExpr::halfspace(faces[j].normal, faces[j].offset));
    parts.push_back(flat_face(faces[k].normal, faces[k].offset, clip_set(dim, std::move(others), omega)));
  }
  return accumulate(parts, "face-sum");
}

Estimate box_perimeter(const Box& b, const Domain& omega) {
  const int dim = static_cast<int>(b.lo.size());
  if (omega.kind() == Domain::Kind::Ball) {
    std::vector<Halfspace> faces;
    for (int i = 0; i < dim; ++i) {
      Point n(dim, 0.0);
      n[i] = -1.0;
      faces.push_back({n, -b.lo[i]});
      n[i] = 1.0;
      faces.push_back({n, b.hi[i]});
    }
    return polytope_perimeter(faces, dim, omega);
  }
  // Axis faces against a product domain: closed form.
  Point lo = b.lo, hi = b.hi;
  if (omega.kind() == Domain::Kind::Box) {
    for (int i = 0; i < dim; ++i) {
      lo[i] = std::max(lo[i], omega.lo()[i]);
      hi[i] = std::min(hi[i], omega.hi()[i]);
    }
  }
  auto inside_axis = [&](int i, double x) {
    return omega.kind() != Domain::Kind::Box || (x > omega.lo()[i] && x < omega.hi()[i]);
  };
  double total = 0.0;
  for (int i = 0; i < dim; ++i) {
    double cross = 1.0;
    for (int j = 0; j < dim; ++j)
      if (j != i) cross *= lo[j] < hi[j] ? normal_interval_mass(lo[j], hi[j]) : 0.0;
    for (double c : {b.lo[i], b.hi[i]})
      if (inside_axis(i, c)) total += std::exp(-0.5 * c * c) * cross;
  }
  return {total, kExactRel * total, 1, "face-exact"};
}

// Angles where the circle m + rho (cos phi u + sin phi v) crosses the
// boundary of Omega.
void crossing_angles(const Domain& omega, const Point& m, double rho, const Point& u, const Point& v,
                     std::vector<double>& out) {
  auto solve = [&](double a, double b, double c) {
    const double amp = std::hypot(a, b);
    if (!(amp > 0.0) || std::abs(c) >= amp) return;
    const double base = std::atan2(b, a);
    const double delta = std::acos(c / amp);
    for (double phi : {base - delta, base + delta}) {
      phi = std::fmod(phi, 2.0 * std::numbers::pi);
      if (phi < 0.0) phi += 2.0 * std::numbers::pi;
      out.push_back(phi);
    }
  };
  const int dim = static_cast<int>(m.size());
  if (omega.kind() == Domain::Kind::Ball) {
    Point d(dim);
    for (int i = 0; i < dim; ++i) d[i] = m[i] - omega.center()[i];
    solve(2.0 * rho * dot(d, u), 2.0 * rho * dot(d, v),
          omega.radius() * omega.radius() - squared_norm(d) - rho * rho);
  } else if (omega.kind() == Domain::Kind::Box) {
    for (int i = 0; i < dim; ++i)
      for (double k : {omega.lo()[i], omega.hi()[i]}) solve(rho * u[i], rho * v[i], k - m[i]);
  }
}

// int over {phi : x(phi) in Omega} of exp(-|x(phi)|^2 / 2) d phi.
Estimate circle_integral(const Domain& omega, const Point& m, double rho, const Point& u, const Point& v) {
  std::vector<double> cuts{0.0, 2.0 * std::numbers::pi};
  crossing_angles(omega, m, rho, u, v, cuts);
  std::sort(cuts.begin(), cuts.end());
  const double mm = squared_norm(m) + rho * rho;
  const double mu = dot(m, u), mv = dot(m, v);
  auto f = [&](double phi) { return std::exp(-0.5 * (mm + 2.0 * rho * (mu * std::cos(phi) + mv * std::sin(phi)))); };
  Estimate total{0.0, 0.0, 0, "arc-quadrature"};
  const int dim = static_cast<int>(m.size());
  Point x(dim);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k], b = cuts[k + 1];
    if (!(b - a > 1e-15)) continue;
    const double mid = 0.5 * (a + b);
    for (int i = 0; i < dim; ++i) x[i] = m[i] + rho * (std::cos(mid) * u[i] + std::sin(mid) * v[i]);
    if (!omega.contains(x)) continue;
    const Estimate e = integrate_1d(f, {a, b}, face_spec());
    total.value += e.value;
    total.error += e.error;
    total.evals += e.evals;
  }
  return total;
}

Estimate ball_perimeter(const Ball& b, int dim, const Domain& omega) {
  const double R = b.radius;
  if (squared_norm(b.center) == 0.0 && !omega.bounded()) {
    const double v = std::pow(2.0 * std::numbers::pi, -0.5 * (dim - 1)) * unit_sphere_area(dim) *
                     std::pow(R, dim - 1) * std::exp(-0.5 * R * R);
    return {v, kExactRel * v, 1, "closed-form"};
  }
  if (dim == 1) {
    double v = 0.0;
    for (double x : {b.center[0] - R, b.center[0] + R})
      if (omega.contains(Point{x})) v += std::exp(-0.5 * x * x);
    return {v, kExactRel * v, 1, "face-exact"};
  }
  if (dim == 2) {
    Estimate e = circle_integral(omega, b.center, R, Point{1.0, 0.0}, Point{0.0, 1.0});
    const double scale = R / std::sqrt(2.0 * std::numbers::pi);
    e.value *= scale;
    e.error *= scale;
    return e;
  }
  if (dim == 3) {
    const Point u{1.0, 0.0, 0.0}, v{0.0, 1.0, 0.0};
    std::uint64_t evals = 0;
    double inner_err = 0.0;
    auto ring = [&](double theta) {
      Point m = b.center;
      m[2] += R * std::cos(theta);
      const Estimate e = circle_integral(omega, m, R * std::sin(theta), u, v);
      evals += e.evals;
      inner_err = std::max(inner_err, e.error);
      return std::sin(theta) * e.value;
    };
    Estimate outer = integrate_1d(ring, {0.0, std::numbers::pi}, face_spec());
    const double scale = R * R / (2.0 * std::numbers::pi);
    return {outer.value * scale, (outer.error + 2.0 * inner_err) * scale, outer.evals + evals, "sphere-quadrature"};
  }
  throw UnsupportedShape("gaussian_perimeter: off-centre or clipped balls are supported up to N = 3");
}

}  // namespace

Estimate gaussian_measure(const SetExpr& e, MeasureMethod method, std::uint64_t samples, RngStream stream) {
  if (method == MeasureMethod::ExactIfAvailable) {
    if (auto m = exact_measure(e)) return {*m, kExactRel, 1, "exact"};
    throw UnsupportedShape("gaussian_measure: no closed form for " + describe(e));
  }
  const int dim = e.dim();
  return mc_mean(
      [&](RandomSource& src) {
        Point x(dim);
        for (double& c : x) c = src.normal();
        return contains(e, x) ? 1.0 : 0.0;
      },
      samples, stream);
}

Estimate gaussian_perimeter(const SetExpr& e, const Domain& omega) {
  if (omega.dim() != e.dim()) throw DomainError("gaussian_perimeter: dimension mismatch");
  const int dim = e.dim();
  return std::visit(
      Overloaded{
          [&](const Halfspace& h) { return flat_face(h.normal, h.offset, clip_set(dim, {}, omega)); },
          [&](const Ball& b) { return ball_perimeter(b, dim, omega); },
          [&](const Box& b) { return box_perimeter(b, omega); },
          [&](const Polytope& p) { return polytope_perimeter(p.faces, dim, omega); },
          [&](const Complement& c) { return gaussian_perimeter(c.child, omega); },
          [&](const Union& u) -> Estimate {
            if (u.children.empty()) return {0.0, 0.0, 0, "exact"};
            throw UnsupportedShape("gaussian_perimeter: unions are not supported");
          },
          [&](const Intersection& in) -> Estimate {
            if (in.children.empty()) return {0.0, 0.0, 0, "exact"};
            std::vector<Halfspace> faces;
            for (const SetExpr& c : in.children) {
              const auto* h = std::get_if<Halfspace>(&c.node().value);
              if (!h) throw UnsupportedShape("gaussian_perimeter: only intersections of halfspaces are supported");
              faces.push_back(*h);
            }
            return polytope_perimeter(faces, dim, omega);
          },
      },
      e.node().value);
}

std::vector<Point> sample_gaussian(std::uint64_t n, int dim, const RngStream& stream) {
  if (n < 1) throw DomainError("sample_gaussian: n must be >= 1");
  if (dim < 1) throw DomainError("sample_gaussian: dimension must be >= 1");
  std::vector<Point> out(n, Point(dim));
  const std::uint64_t batches = (n + kBatchSize - 1) / kBatchSize;
  parallel_for(batches, [&](std::size_t b) {
    RandomSource src(stream, b);
    const std::uint64_t end = std::min<std::uint64_t>(n, (b + 1) * kBatchSize);
    for (std::uint64_t k = b * kBatchSize; k < end; ++k)
      for (double& c : out[k]) c = src.normal();
  });
  return out;
}

}  // namespace gfp
