#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gfp/numerics/errors.hpp"
#include "gfp/numerics/monte_carlo.hpp"
#include "gfp/numerics/special.hpp"
#include "gfp/perimeter/halfspace.hpp"
#include "gfp/perimeter/perimeter.hpp"
#include "gfp/perimeter/seminorm.hpp"
#include "gfp/perimeter/tensor.hpp"
#include "gfp/perimeter/time_grid.hpp"

using namespace gfp;

namespace {

constexpr double kLimitConstant = std::numbers::sqrt2 / std::numbers::pi;

// 30-digit mpmath values of int_0^inf t^{-s/2-1} [Phi(a) - Phi_2(a, a; e^{-t})] dt.
struct HalfspaceOracle {
  double a, s, value;
};
constexpr HalfspaceOracle kHalfspace[] = {
    {0.0, 0.25, 2.54049622978214}, {1.0, 0.25, 1.39580234012690}, {0.0, 0.5, 1.83963703241902},
    {1.0, 0.5, 1.04221081416843},  {0.0, 0.75, 2.40491337235522}, {1.0, 0.75, 1.40803100512755},
};

McConfig small_mc(std::uint64_t samples = 200000, std::uint64_t seed = 7) {
  McConfig mc;
  mc.samples = samples;
  mc.stream = RngStream{seed, 0};
  return mc;
}

bool agree(const Estimate& a, const Estimate& b, double k = 3.0) {
  return std::abs(a.value - b.value) <= k * combined_error(a, b);
}

SetExpr rotated_box(double half, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  std::vector<Halfspace> faces;
  for (const Point& n : {Point{c, s}, Point{-c, -s}, Point{-s, c}, Point{s, -c}}) faces.push_back({n, half});
  return SetExpr::polytope(faces);
}

}  // namespace

TEST_CASE("log time grid integrates a known correlation") {
  // J(t) = 1 - exp(-sqrt t): int_0^inf t^{-sigma/2-1} J dt = 2 Gamma(1 - sigma) / sigma.
  const LogTimeGrid grid(1e-6, 1e6, 161);
  std::vector<double> j;
  for (double t : grid.times()) j.push_back(-std::expm1(-std::sqrt(t)));
  for (double sigma : {0.3, 0.5, 0.7, 0.9}) {
    const double exact = 2.0 * gamma_function(1.0 - sigma) / sigma;
    CHECK(grid.weights(sigma, 0.5, true).apply(j, 1.0) == doctest::Approx(exact).epsilon(1e-6));
    CHECK(grid.weights(sigma, 0.5).apply(j, 1.0) == doctest::Approx(exact).epsilon(1e-3));
    CHECK(grid.coarse_weights(sigma, 0.5, true).apply(j, 1.0) == doctest::Approx(exact).epsilon(1e-4));
  }
  CHECK_THROWS_AS(grid.weights(1.2, 0.5), DomainError);
  CHECK_THROWS_AS(LogTimeGrid(1.0, 0.5, 10), DomainError);
}

TEST_CASE("halfspace perimeter against frozen values") {
  for (const auto& o : kHalfspace) {
    const Estimate e = halfspace_frac_perimeter(o.a, o.s);
    CHECK(e.value == doctest::Approx(o.value).epsilon(1e-11));
    CHECK(e.error < 1e-9);
    CHECK(halfspace_frac_perimeter(-o.a, o.s).value == doctest::Approx(o.value).epsilon(1e-12));
  }
  CHECK(halfspace_heat_correlation(0.0, std::log(2.0)) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK_THROWS_AS(halfspace_frac_perimeter(0.0, 1.0), DomainError);
}

TEST_CASE("halfspace perimeter near s = 1") {
  const double p0 = halfspace_frac_perimeter(0.0, 0.999).value * 0.001;
  const double p1 = halfspace_frac_perimeter(1.0, 0.999).value * 0.001;
  CHECK(p0 == doctest::Approx(kLimitConstant).epsilon(0.01));
  CHECK(p1 / p0 == doctest::Approx(std::exp(-0.5)).epsilon(0.02));
}

TEST_CASE("isoperimetric function") {
  for (double s : {0.3, 0.6, 0.9}) {
    CHECK(isoperimetric_function(0.5, s).value == doctest::Approx(halfspace_frac_perimeter(0.0, s).value).epsilon(1e-14));
    for (double m : {0.05, 0.2, 0.37}) {
      const double lo = isoperimetric_function(m, s).value;
      const double hi = isoperimetric_function(1.0 - m, s).value;
      CHECK(std::abs(lo - hi) <= 1e-10 * lo);
    }
  }
  CHECK_THROWS_AS(isoperimetric_function(0.0, 0.5), DomainError);
}

TEST_CASE("trivial sets and domains") {
  const McConfig mc = small_mc(2000);
  const Domain om = Domain::ball({0.0, 0.0}, 2.0);
  for (const SetExpr& e : {SetExpr::empty(2), SetExpr::whole(2), SetExpr::complement(SetExpr::empty(2))}) {
    const auto r = frac_perimeter(e, om, 0.5, Engine::HeatMc, mc);
    CHECK(r.total.value == 0.0);
    CHECK(r.total.error == 0.0);
    CHECK(frac_perimeter_local(e, om, 0.5, Engine::TensorQuadrature).value == 0.0);
  }
  const SetExpr h = SetExpr::axis_halfspace(2, 0, 0.3);
  const Estimate nl = frac_perimeter_nonlocal(h, Domain::whole(2), 0.5, mc);
  CHECK(nl.value == 0.0);
  CHECK(nl.error == 0.0);

  // E = Omega leaves nothing of E^c inside Omega.
  const SetExpr b = SetExpr::ball({0.0, 0.0}, 1.0);
  const auto r = frac_perimeter(b, Domain::ball({0.0, 0.0}, 1.0), 0.5, Engine::HeatMc, mc);
  CHECK(r.local.value == 0.0);
  CHECK(r.local.error == 0.0);
  CHECK(r.nonlocal.value > 0.0);
  CHECK(r.total.value == r.local.value + r.nonlocal.value);
}

TEST_CASE("heat-mc reproduces the halfspace value") {
  const Estimate ref = halfspace_frac_perimeter(0.0, 0.5);
  for (int n : {1, 2, 3}) {
    const Estimate mc = frac_perimeter_local(SetExpr::axis_halfspace(n, n - 1, 0.0), Domain::whole(n), 0.5,
                                             Engine::HeatMc, small_mc());
    CHECK(agree(mc, ref));
    CHECK(mc.error < 0.01 * ref.value);
  }
  const auto rows = frac_perimeter_sweep(SetExpr::axis_halfspace(1, 0, 1.0), Domain::whole(1), {0.3, 0.7},
                                         Engine::HeatMc, small_mc());
  CHECK(agree(rows[0].total, halfspace_frac_perimeter(1.0, 0.3)));
  CHECK(agree(rows[1].total, halfspace_frac_perimeter(1.0, 0.7)));
}

TEST_CASE("local plus nonlocal in one dimension") {
  const SetExpr h = SetExpr::axis_halfspace(1, 0, 0.0);
  const Domain om = Domain::ball({0.0}, 2.0);
  const auto r = frac_perimeter(h, om, 0.5, Engine::HeatMc, small_mc());
  CHECK(agree(r.total, halfspace_frac_perimeter(0.0, 0.5)));

  // With the deterministic engine the part outside Omega on both sides closes the identity.
  const auto t = frac_perimeter(h, om, 0.5, Engine::TensorQuadrature);
  const SetExpr oc = SetExpr::complement(om.as_set());
  const double outside = [&] {
    // (E cap Omega^c, E^c cap Omega^c) on the tensor time grid
    const TensorConfig tc;
    const LogTimeGrid grid(tc.t_min, tc.t_tail, tc.t_nodes);
    std::vector<double> j;
    const SetExpr a = SetExpr::intersection_of(1, {h, oc});
    const SetExpr b = SetExpr::intersection_of(1, {SetExpr::complement(h), oc});
    for (double tk : grid.times()) j.push_back(pair_correlation(a, b, tk).value);
    const double j_inf = sliced_measure(a).value * sliced_measure(b).value;
    return grid.weights(0.5, 0.5, true).apply(j, j_inf);
  }();
  const double ref = halfspace_frac_perimeter(0.0, 0.5).value;
  CHECK(t.total.value + outside == doctest::Approx(ref).epsilon(1e-5));
  CHECK(t.total.error < 1e-4 * ref);
}

TEST_CASE("complement symmetry is exact under shared streams") {
  const SetExpr b = SetExpr::ball({0.0, 0.0}, 1.0);
  const Domain om = Domain::ball({0.0, 0.0}, 2.0);
  const auto r1 = frac_perimeter(b, om, 0.5, Engine::HeatMc, small_mc(50000));
  const auto r2 = frac_perimeter(SetExpr::complement(b), om, 0.5, Engine::HeatMc, small_mc(50000));
  CHECK(std::abs(r1.local.value - r2.local.value) <= 1e-12 * r1.local.value);
  CHECK(std::abs(r1.nonlocal.value - r2.nonlocal.value) <= 1e-12 * r1.nonlocal.value);
}

TEST_CASE("heat-mc is bitwise reproducible across worker counts") {
  const SetExpr b = SetExpr::ball({0.3, 0.0}, 1.0);
  const Domain om = Domain::box({-1.5, -1.5}, {1.5, 1.5});
  PerimeterResult a, c;
  {
    ScopedWorkers w(1);
    a = frac_perimeter(b, om, 0.4, Engine::HeatMc, small_mc(20000));
  }
  {
    ScopedWorkers w(4);
    c = frac_perimeter(b, om, 0.4, Engine::HeatMc, small_mc(20000));
  }
  CHECK(a.local.value == c.local.value);
  CHECK(a.local.error == c.local.error);
  CHECK(a.nonlocal.value == c.nonlocal.value);
}

TEST_CASE("domain monotonicity and rotation equivariance") {
  const SetExpr box = SetExpr::box({-1.0, -1.0}, {1.0, 1.0});
  const Estimate big = frac_perimeter_local(box, Domain::ball({0.0, 0.0}, 2.0), 0.5, Engine::HeatMc, small_mc());
  const Estimate small =
      frac_perimeter_local(box, Domain::ball({0.0, 0.0}, 1.2), 0.5, Engine::HeatMc, small_mc(200000, 8));
  CHECK(small.value <= big.value + 3.0 * combined_error(small, big));

  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int i = 0; i < 3; ++i) {
    const Estimate rot = frac_perimeter_local(rotated_box(1.0, angle(gen)), Domain::ball({0.0, 0.0}, 2.0), 0.5,
                                              Engine::HeatMc, small_mc(200000, 20 + i));
    CHECK(agree(rot, big));
  }
}

TEST_CASE("tensor engine against the halfspace value") {
  const Estimate ref = halfspace_frac_perimeter(0.0, 0.5);
  const Estimate one = frac_perimeter_local(SetExpr::axis_halfspace(1, 0, 0.0), Domain::whole(1), 0.5,
                                            Engine::TensorQuadrature);
  CHECK(one.value == doctest::Approx(ref.value).epsilon(1e-5));
  CHECK(std::abs(one.value - ref.value) <= one.error);
  TensorConfig tc;
  tc.t_nodes = 33;
  const Estimate two = frac_perimeter_local(SetExpr::halfspace({0.6, 0.8}, 0.0), Domain::whole(2), 0.5,
                                            Engine::TensorQuadrature, {}, tc);
  CHECK(two.value == doctest::Approx(ref.value).epsilon(1e-4));
  CHECK(std::abs(two.value - ref.value) <= two.error);
  CHECK_THROWS_AS(frac_perimeter_local(SetExpr::axis_halfspace(3, 0, 0.0), Domain::whole(3), 0.5,
                                       Engine::TensorQuadrature),
                  DomainError);
}

TEST_CASE("pair correlation: direct and sheared forms agree") {
  const SetExpr om = SetExpr::ball({0.0, 0.0}, 2.0);
  const SetExpr box = SetExpr::box({-1.0, -1.0}, {1.0, 1.0});
  const SetExpr a = SetExpr::intersection_of(2, {box, om});
  const SetExpr b = SetExpr::intersection_of(2, {SetExpr::complement(box), om});
  // The engine switches formulation at t = 0.02.
  const double below = pair_correlation(a, b, 0.02 * (1.0 - 1e-9)).value;
  const double above = pair_correlation(a, b, 0.02).value;
  CHECK(below == doctest::Approx(above).epsilon(1e-7));
  // J(inf) is the product of the measures.
  const double prod = sliced_measure(a).value * sliced_measure(b).value;
  CHECK(pair_correlation(a, b, 40.0).value == doctest::Approx(prod).epsilon(1e-8));
  CHECK(sliced_measure(box).value == doctest::Approx(std::pow(1.0 - 2.0 * normal_sf(1.0), 2)).epsilon(1e-10));
}

TEST_CASE("seminorm identities for indicators") {
  const SetExpr h = SetExpr::axis_halfspace(1, 0, 0.0);
  const Domain om = Domain::ball({0.0}, 2.0);
  const PointFunction chi = [&h](PointView x) { return contains(h, x) ? 1.0 : 0.0; };
  const Estimate local = frac_perimeter_local(h, om, 0.5, Engine::HeatMc, small_mc(200000, 3));
  Estimate p1 = seminorm(chi, om, 0.5, 1, small_mc(200000, 4));
  Estimate p2 = seminorm(chi, om, 0.25, 2, small_mc(200000, 5));
  for (Estimate* e : {&p1, &p2}) {
    e->value *= 0.5;
    e->error *= 0.5;
    CHECK(agree(*e, local));
  }
  const Estimate zero = seminorm([](PointView) { return 0.25; }, om, 0.5, 1, small_mc(2000));
  CHECK(zero.value == 0.0);
  CHECK_THROWS_AS(seminorm(chi, om, 0.9, 3, small_mc(2000)), DomainError);
  CHECK_THROWS_AS(seminorm([](PointView) { return 2.0; }, om, 0.5, 1, small_mc(2000)), DomainError);
}

TEST_CASE("coarea check") {
  const Domain om = Domain::ball({0.0, 0.0}, 2.0);
  const auto flat = coarea_check([](PointView) { return 0.4; }, om, 0.5, 16, small_mc(2000));
  CHECK(flat.lhs.value == 0.0);
  CHECK(flat.rhs.value == 0.0);

  const SetExpr h = SetExpr::axis_halfspace(2, 0, 0.0);
  const auto step = coarea_check([&h](PointView x) { return contains(h, x) ? 1.0 : 0.0; }, om, 0.5, 8,
                                 small_mc(50000));
  CHECK(step.lhs.value == doctest::Approx(step.rhs.value).epsilon(1e-14));
  CHECK(step.discretization.value <= 1e-14 * step.lhs.value);

  const auto smooth = coarea_check([](PointView x) { return normal_cdf(x[0]); }, om, 0.5, 64, small_mc(100000));
  CHECK(smooth.consistent());
  CHECK(smooth.difference.error < smooth.lhs.error);
  CHECK_THROWS_AS(coarea_check([](PointView) { return 0.0; }, om, 0.5, 1, small_mc(2000)), DomainError);
}

TEST_CASE("configuration validation") {
  McConfig mc;
  mc.samples = 10;
  CHECK_THROWS_AS(mc.validate(), DomainError);
  mc = McConfig{};
  mc.t_min = 1.0;
  CHECK_THROWS_AS(mc.validate(), DomainError);
  TensorConfig tc;
  tc.t_nodes = 32;
  CHECK_THROWS_AS(tc.validate(), DomainError);
  CHECK(engine_from_string("heat-mc") == Engine::HeatMc);
  CHECK(to_string(Engine::TensorQuadrature) == "tensor-quadrature");
  CHECK_THROWS_AS(engine_from_string("gauss"), DomainError);
  CHECK_THROWS_AS(frac_perimeter_local(SetExpr::ball({0.0, 0.0}, 1.0), Domain::whole(2), 0.5, Engine::SemiAnalytic),
                  UnsupportedShape);
  CHECK_THROWS_AS(frac_perimeter_local(SetExpr::ball({0.0, 0.0}, 1.0), Domain::whole(1), 0.5, Engine::HeatMc),
                  DomainError);
}
