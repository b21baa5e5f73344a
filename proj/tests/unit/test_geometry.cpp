#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gfp/geometry/domain.hpp"
#include "gfp/geometry/measure.hpp"
#include "gfp/geometry/set_expr.hpp"
#include "gfp/numerics/errors.hpp"
#include "gfp/numerics/special.hpp"

using namespace gfp;

namespace {

// Midpoint rule around a circle of radius R centred at c, restricted to omega.
double circle_oracle(const Point& c, double R, const Domain& omega, int n = 200000) {
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    const double phi = 2.0 * std::numbers::pi * (k + 0.5) / n;
    const Point x{c[0] + R * std::cos(phi), c[1] + R * std::sin(phi)};
    if (omega.contains(x)) s += std::exp(-0.5 * squared_norm(x));
  }
  return s * (2.0 * std::numbers::pi / n) * R / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

TEST_CASE("membership") {
  const SetExpr h = SetExpr::halfspace({1.0, 0.0}, 0.0);
  CHECK(contains(h, Point{-1.0, 0.0}));
  CHECK_FALSE(contains(h, Point{0.0, 0.0}));  // strict
  CHECK_FALSE(contains(SetExpr::complement(SetExpr::ball({0.0, 0.0}, 1.0)), Point{0.0, 0.0}));
  const SetExpr slab = SetExpr::intersection_of(
      2, {SetExpr::halfspace({1.0, 0.0}, 0.0), SetExpr::halfspace({-1.0, 0.0}, 1.0)});
  CHECK(contains(slab, Point{-0.5, 0.0}));
  CHECK_FALSE(contains(slab, Point{-1.5, 0.0}));
  CHECK_THROWS_AS(contains(h, Point{1.0}), DomainError);
  CHECK_THROWS_AS(SetExpr::halfspace({1.0, 1.0}, 0.0), DomainError);
  CHECK_THROWS_AS(SetExpr::box({0.0, 1.0}, {1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(SetExpr::ball({0.0}, 0.0), DomainError);
  CHECK_FALSE(contains(SetExpr::empty(2), Point{0.0, 0.0}));
  CHECK(contains(SetExpr::whole(2), Point{5.0, 0.0}));
}

TEST_CASE("complement involution") {
  const SetExpr shapes[] = {SetExpr::ball({0.2, -0.1}, 0.7), SetExpr::box({-1.0, 0.0}, {0.5, 2.0}),
                            SetExpr::halfspace({0.6, 0.8}, 0.3)};
  for (const SetExpr& e : shapes) {
    const SetExpr cc = SetExpr::complement(SetExpr::complement(e));
    for (double x = -2.0; x <= 2.0; x += 0.37)
      for (double y = -2.0; y <= 2.0; y += 0.41) CHECK(contains(cc, Point{x, y}) == contains(e, Point{x, y}));
  }
}

TEST_CASE("intervals along lines agree with membership") {
  const SetExpr e = SetExpr::union_of(
      2, {SetExpr::ball({0.0, 0.0}, 1.0),
          SetExpr::intersection_of(2, {SetExpr::box({0.5, -0.5}, {2.0, 0.5}),
                                       SetExpr::complement(SetExpr::halfspace({0.0, 1.0}, -0.2))})});
  const Point p{-3.0, 0.1}, d{1.0, -0.05};
  const IntervalSet ivs = intervals_along(e, p, d);
  for (double tau = -1.0; tau <= 7.0; tau += 0.01) {
    const Point x{p[0] + tau * d[0], p[1] + tau * d[1]};
    bool in = false;
    for (const Interval& iv : ivs) in = in || (tau > iv.lo && tau < iv.hi);
    CHECK(in == contains(e, x));
  }
}

TEST_CASE("bounding boxes") {
  const BoundingBox b = bounding_box(SetExpr::ball({1.0, 2.0}, 0.5));
  CHECK(b.lo[0] == 0.5);
  CHECK(b.hi[1] == 2.5);
  CHECK(b.bounded());
  CHECK_FALSE(bounding_box(SetExpr::halfspace({1.0, 0.0}, 0.0)).bounded());
  const BoundingBox p = bounding_box(SetExpr::polytope({{{1.0, 0.0}, 1.0}, {{-1.0, 0.0}, 1.0}, {{0.0, 1.0}, 2.0},
                                                        {{0.0, -1.0}, 3.0}}));
  CHECK(p.lo[0] == -1.0);
  CHECK(p.lo[1] == -3.0);
  CHECK(p.hi[1] == 2.0);
}

TEST_CASE("exact gaussian measures") {
  CHECK(gaussian_measure(SetExpr::halfspace({1.0, 0.0}, 0.0)).value == 0.5);
  const double phi1 = normal_cdf(1.0) - 0.5;
  CHECK(gaussian_measure(SetExpr::box({0.0, 0.0}, {1.0, 1.0})).value == doctest::Approx(phi1 * phi1).epsilon(1e-14));
  CHECK(gaussian_measure(SetExpr::box({0.0, 0.0}, {1.0, 1.0})).value == doctest::Approx(0.116516).epsilon(1e-5));
  CHECK(gaussian_measure(SetExpr::ball({0.0, 0.0}, 1.0)).value == doctest::Approx(0.393469).epsilon(1e-6));
  CHECK_THROWS_AS(gaussian_measure(SetExpr::ball({0.5, 0.0}, 1.0)), UnsupportedShape);

  const SetExpr shapes[] = {SetExpr::halfspace({0.0, 1.0}, 0.4), SetExpr::ball({0.0, 0.0}, 1.3),
                            SetExpr::box({-1.0, 0.0}, {0.5, 2.0})};
  for (const SetExpr& e : shapes) {
    const Estimate a = gaussian_measure(e);
    const Estimate c = gaussian_measure(SetExpr::complement(e));
    CHECK(std::abs(a.value + c.value - 1.0) <= a.error + c.error + 1e-15);
    const Estimate mc = gaussian_measure(e, MeasureMethod::MonteCarlo, 200000, RngStream{5, 1});
    CHECK(std::abs(mc.value - a.value) <= 4.0 * mc.error);
  }
  // Ball measure against 10^7-sample Monte Carlo.
  const Estimate mc = gaussian_measure(SetExpr::ball({0.0, 0.0}, 1.0), MeasureMethod::MonteCarlo, 10000000,
                                       RngStream{17, 0});
  CHECK(std::abs(mc.value - (1.0 - std::exp(-0.5))) <= 4.0 * mc.error);
}

TEST_CASE("gaussian perimeters: closed forms") {
  for (int dim : {1, 2, 3}) {
    Point n(dim, 0.0);
    n[0] = 1.0;
    CHECK(gaussian_perimeter(SetExpr::halfspace(n, 0.0), Domain::whole(dim)).value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gaussian_perimeter(SetExpr::halfspace(n, 1.0), Domain::whole(dim)).value ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  }
  CHECK(gaussian_perimeter(SetExpr::halfspace({1.0, 0.0}, 1.0), Domain::whole(2)).value ==
        doctest::Approx(0.606531).epsilon(1e-6));
  const Estimate ball = gaussian_perimeter(SetExpr::ball({0.0, 0.0}, 1.0), Domain::whole(2));
  CHECK(ball.value == doctest::Approx(1.520347).epsilon(1e-6));
  CHECK(ball.value == doctest::Approx(circle_oracle({0.0, 0.0}, 1.0, Domain::whole(2))).epsilon(1e-10));
}

TEST_CASE("gaussian perimeters: clipped and off-centre faces") {
  // Off-centre ball through the arc quadrature.
  const Domain whole = Domain::whole(2);
  CHECK(gaussian_perimeter(SetExpr::ball({0.5, -0.3}, 0.8), whole).value ==
        doctest::Approx(circle_oracle({0.5, -0.3}, 0.8, whole)).epsilon(1e-9));
  const Domain box = Domain::box({-0.5, -2.0}, {2.0, 2.0});
  CHECK(gaussian_perimeter(SetExpr::ball({0.0, 0.0}, 1.0), box).value ==
        doctest::Approx(circle_oracle({0.0, 0.0}, 1.0, box, 2000000)).epsilon(1e-6));
  const Domain big = Domain::ball({0.3, 0.0}, 1.5);
  CHECK(gaussian_perimeter(SetExpr::ball({0.0, 0.0}, 1.0), big).value ==
        doctest::Approx(circle_oracle({0.0, 0.0}, 1.0, big, 2000000)).epsilon(1e-6));

  // Halfspace clipped by a ball: e^{-c^2/2} times the in-plane Gaussian mass.
  const double c = 0.5, R = 2.0, half = std::sqrt(R * R - c * c);
  CHECK(gaussian_perimeter(SetExpr::halfspace({1.0, 0.0}, c), Domain::ball({0.0, 0.0}, R)).value ==
        doctest::Approx(std::exp(-0.125) * normal_interval_mass(-half, half)).epsilon(1e-13));

  // Box faces: closed form vs the same box as a polytope (sliced faces).
  const SetExpr b2 = SetExpr::box({-1.0, -0.5}, {1.0, 1.5});
  const SetExpr p2 = SetExpr::polytope({{{-1.0, 0.0}, 1.0}, {{1.0, 0.0}, 1.0}, {{0.0, -1.0}, 0.5}, {{0.0, 1.0}, 1.5}});
  CHECK(gaussian_perimeter(b2, whole).value == doctest::Approx(gaussian_perimeter(p2, whole).value).epsilon(1e-13));
  const Domain om = Domain::box({-0.5, -3.0}, {3.0, 3.0});
  CHECK(gaussian_perimeter(b2, om).value == doctest::Approx(gaussian_perimeter(p2, om).value).epsilon(1e-13));
  const SetExpr b3 = SetExpr::box({-1.0, -0.5, 0.0}, {1.0, 1.5, 0.7});
  const SetExpr p3 = SetExpr::polytope({{{-1.0, 0.0, 0.0}, 1.0},
                                        {{1.0, 0.0, 0.0}, 1.0},
                                        {{0.0, -1.0, 0.0}, 0.5},
                                        {{0.0, 1.0, 0.0}, 1.5},
                                        {{0.0, 0.0, -1.0}, 0.0},
                                        {{0.0, 0.0, 1.0}, 0.7}});
  CHECK(gaussian_perimeter(b3, Domain::whole(3)).value ==
        doctest::Approx(gaussian_perimeter(p3, Domain::whole(3)).value).epsilon(1e-9));
  // Sphere quadrature path in N = 3 against the closed form.
  CHECK(gaussian_perimeter(SetExpr::ball({0.0, 0.0, 0.0}, 1.2), Domain::ball({0.0, 0.0, 0.0}, 50.0)).value ==
        doctest::Approx(gaussian_perimeter(SetExpr::ball({0.0, 0.0, 0.0}, 1.2), Domain::whole(3)).value).epsilon(1e-9));
}

TEST_CASE("perimeter complement symmetry and unsupported shapes") {
  const Domain om = Domain::ball({0.0, 0.0}, 2.0);
  const SetExpr shapes[] = {SetExpr::ball({0.0, 0.0}, 1.0), SetExpr::box({-1.0, -1.0}, {1.0, 1.0}),
                            SetExpr::halfspace({0.0, 1.0}, 0.3)};
  for (const SetExpr& e : shapes)
    CHECK(gaussian_perimeter(e, om).value == gaussian_perimeter(SetExpr::complement(e), om).value);
  CHECK_THROWS_AS(gaussian_perimeter(SetExpr::union_of(2, {shapes[0], shapes[1]}), om), UnsupportedShape);
}

TEST_CASE("strips") {
  const StripPair s = strips(Domain::ball({0.0, 0.0}, 1.0), 0.1);
  CHECK(s.in_outer(Point{1.05, 0.0}));
  CHECK(s.in_inner(Point{0.95, 0.0}));
  CHECK_FALSE(s.in_outer(Point{0.95, 0.0}));
  CHECK_FALSE(s.in_inner(Point{0.5, 0.0}));
  const StripPair w = strips(Domain::whole(2), 0.3);
  CHECK_FALSE(w.in_outer(Point{0.0, 0.0}));
  CHECK_FALSE(w.in_inner(Point{0.0, 0.0}));
  const StripPair b = strips(Domain::box({-1.0, -1.0}, {1.0, 1.0}), 0.2);
  CHECK(b.in_outer(Point{1.1, 0.0}));
  CHECK_FALSE(b.in_outer(Point{1.1, 1.3}));
  CHECK(b.in_inner(Point{0.0, -0.9}));
  CHECK_THROWS_AS(strips(Domain::whole(2), 0.0), DomainError);
}

TEST_CASE("sample_gaussian") {
  const auto a = sample_gaussian(10, 2, RngStream{3, 1});
  const auto b = sample_gaussian(10, 2, RngStream{3, 1});
  CHECK(a[0] == b[0]);
  const auto big = sample_gaussian(1000000, 1, RngStream{3, 2});
  double mean = 0.0, inside = 0.0;
  for (const Point& p : big) {
    mean += p[0];
    inside += p[0] < 0.0 ? 1.0 : 0.0;
  }
  mean /= big.size();
  inside /= big.size();
  CHECK(std::abs(mean) < 5e-3);
  CHECK(std::abs(inside - 0.5) <= 4.0 * std::sqrt(0.25 / big.size()));
}
