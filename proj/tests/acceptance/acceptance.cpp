// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <unistd.h>
#include <vector>

#include "gfp/geometry/measure.hpp"
#include "gfp/kernel/subordinated.hpp"
#include "gfp/limits/isoperimetry.hpp"
#include "gfp/limits/sweep.hpp"
#include "gfp/numerics/monte_carlo.hpp"
#include "gfp/numerics/special.hpp"
#include "gfp/perimeter/halfspace.hpp"
#include "gfp/perimeter/perimeter.hpp"
#include "gfp/perimeter/seminorm.hpp"
#include "gfp/runner/io.hpp"
#include "gfp/runner/runner.hpp"

using namespace gfp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds, 0 when none is specified
  std::function<Outcome()> check;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

McConfig mc_budget(std::uint64_t samples, std::uint64_t seed) {
  McConfig mc;
  mc.samples = samples;
  mc.stream = RngStream{seed, 0};
  return mc;
}

double z_score(const Estimate& a, const Estimate& b) { return std::abs(a.value - b.value) / combined_error(a, b); }

Outcome subordination_identity() {
  QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  double worst = 0.0;
  int cells = 0;
  for (int n : {1, 2, 3})
    for (double s : {0.25, 0.5, 0.75})
      for (double r : {0.5, 1.0, 2.0}) {
        const double exact = std::pow(2.0, s) * std::pow(std::numbers::pi, -0.5 * n) *
                             gamma_function(0.5 * (n + s)) * std::pow(r, -(n + s));
        worst = std::max(worst, std::abs(euclidean_subordination(r, s, n, spec).value / exact - 1.0));
        ++cells;
      }
  return {cells == 27 && worst <= 1e-6, fmt("27 cells, max relative error %.2e (tol 1e-6)", worst)};
}

Outcome gamma_limit_constant() {
  const std::vector<double> s_list{0.9, 0.95, 0.99, 0.999};
  const auto h0 = gamma_limit_sweep(SetExpr::axis_halfspace(1, 0, 0.0), Domain::whole(1), s_list, Engine::SemiAnalytic);
  const auto h1 = gamma_limit_sweep(SetExpr::axis_halfspace(1, 0, 1.0), Domain::whole(1), s_list, Engine::SemiAnalytic);
  const double gap0 = std::abs(h0.extrapolated / 0.4501582 - 1.0);
  const double ref1 = std::numbers::sqrt2 / std::numbers::pi * std::exp(-0.5);
  const double gap1 = std::abs(h1.extrapolated / ref1 - 1.0);
  return {gap0 <= 0.01 && gap1 <= 0.01,
          fmt("a=0: %.7f vs 0.4501582 (gap %.3f%%); a=1: %.7f vs %.7f (gap %.3f%%); tol 1%%", h0.extrapolated,
              100 * gap0, h1.extrapolated, ref1, 100 * gap1)};
}

Outcome dimension_free() {
  const Estimate ref = halfspace_frac_perimeter(0.0, 0.5);
  std::string detail = fmt("semi-analytic %.6f;", ref.value);
  bool pass = true;
  for (int n : {1, 2, 3}) {
    const Estimate p =
        frac_perimeter(SetExpr::axis_halfspace(n, 0, 0.0), Domain::whole(n), 0.5, Engine::HeatMc, mc_budget(1000000, 30 + n))
            .total;
    const double z = z_score(p, ref);
    pass = pass && z <= 3.0;
    detail += fmt(" N=%d %.5f+-%.5f (z=%.2f)", n, p.value, p.error, z);
  }
  return {pass, detail};
}

runner::RunResult run_config(const runner::json& j) {
  return runner::run_experiment(runner::parse_config(j));
}

std::string rules(const runner::RunResult& r) {
  std::string out;
  for (const auto& a : r.acceptance)
    out += fmt(" %s=%s(obs %.4g, thr %.4g)", a.rule.c_str(), a.pass ? "ok" : "FAIL", a.observed, a.threshold);
  return out;
}

Outcome cube_density_check() {
  const auto res = run_config({{"experiment", "cube-density"},
                               {"x0", {{0.0, 0.0}, {1.0, 0.0}}},
                               {"r", {0.2, 0.1, 0.05}},
                               {"s", {0.999}},
                               {"monte_carlo", {{"samples", 4000000}}},
                               {"seed", 3},
                               {"acceptance", {{"max_relative_error", 0.1}, {"monotone", true}, {"sigma", 3.0}}}});
  std::string detail;
  for (const auto& row : res.rows)
    if (*row.r == 0.05)
      detail += fmt("%s r=0.05: %.5f vs %.5f;", row.shape.c_str(), row.value, row.extra.at("target").get<double>());
  return {res.passed() && res.acceptance.size() == 2, detail + rules(res)};
}

Outcome bounds_audit() {
  const auto res = run_config({{"experiment", "bounds-audit"},
                               {"dims", {1, 2}},
                               {"instances", 1000},
                               {"quadrature", {{"rel_tol", 1e-9}}},
                               {"seed", 11},
                               {"acceptance", {{"max_violations", 0}}}});
  std::uint64_t total = 0;
  for (const auto& row : res.rows) total += row.extra.at("instances").get<std::uint64_t>();
  return {res.passed() && total == 2000, fmt("%llu instances, slack 1e-12 max(1, K);", (unsigned long long)total) + rules(res)};
}

Outcome coarea() {
  const CoareaResult c = coarea_check([](PointView x) { return normal_cdf(x[0]); }, Domain::ball({0.0, 0.0}, 2.0), 0.5,
                                      64, mc_budget(1000000, 2));
  const double gap = std::abs(c.lhs.value - c.rhs.value);
  const double bound = c.difference.error + c.discretization.value;
  return {c.consistent(3.0), fmt("lhs %.6f rhs %.6f |diff| %.2e <= 3 x (%.2e + %.2e) = %.2e", c.lhs.value, c.rhs.value,
                                 gap, c.difference.error, c.discretization.value, 3 * bound)};
}

Outcome seminorm_identities() {
  const Domain om = Domain::ball({0.0}, 2.0);
  const SetExpr h = SetExpr::axis_halfspace(1, 0, 0.0);
  auto chi = [](PointView x) { return x[0] < 0.0 ? 1.0 : 0.0; };
  const Estimate local = frac_perimeter_local(h, om, 0.5, Engine::HeatMc, mc_budget(1000000, 70));
  Estimate w1 = seminorm(chi, om, 0.5, 1, mc_budget(1000000, 71));
  Estimate w2 = seminorm(chi, om, 0.25, 2, mc_budget(1000000, 72));
  for (Estimate* e : {&w1, &w2}) e->value *= 0.5, e->error *= 0.5;
  const double z1 = z_score(w1, local), z2 = z_score(w2, local);
  return {z1 <= 3.0 && z2 <= 3.0, fmt("local %.5f; W^{s,1}/2 %.5f (z=%.2f); W^{s/2,2}^2/2 %.5f (z=%.2f)", local.value,
                                      w1.value, z1, w2.value, z2)};
}

Outcome isoperimetry() {
  const auto rows = isoperimetric_scan({0.3, 0.6, 0.9}, {0.5}, {IsoShape::Halfspace, IsoShape::Ball, IsoShape::Box}, 2,
                                       mc_budget(1000000, 9));
  bool pass = rows.size() == 9;
  std::string detail;
  for (const auto& r : rows) {
    if (!r.ok()) {
      pass = false;
      continue;
    }
    const double z = r.deficit.value / r.deficit.error;
    pass = pass && (r.shape == IsoShape::Halfspace ? std::abs(z) <= 3.0 : z > 3.0);
    detail += fmt(" %s/%.1f z=%.1f", std::string(to_string(r.shape)).c_str(), r.s, z);
  }
  return {pass, "deficit/error:" + detail};
}

Outcome engine_cross_validation() {
  struct Case {
    const char* name;
    SetExpr set;
    Domain omega;
  };
  const std::vector<Case> cases{
      {"H0", SetExpr::axis_halfspace(1, 0, 0.0), Domain::ball({0.0}, 2.0)},
      {"Ball(0,1)", SetExpr::ball({0.0, 0.0}, 1.0), Domain::ball({0.0, 0.0}, 2.0)},
      {"Box", SetExpr::box({-1.0, -1.0}, {1.0, 1.0}), Domain::ball({0.0, 0.0}, 2.0)},
  };
  const std::vector<double> s_list{0.3, 0.5, 0.7};
  bool pass = true;
  double worst = 0.0;
  std::string detail;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto tq = frac_perimeter_local_sweep(cases[c].set, cases[c].omega, s_list, Engine::TensorQuadrature);
    const auto mc = frac_perimeter_local_sweep(cases[c].set, cases[c].omega, s_list, Engine::HeatMc,
                                               mc_budget(1000000, 90 + c));
    detail += fmt(" %s:", cases[c].name);
    for (std::size_t i = 0; i < s_list.size(); ++i) {
      const double z = z_score(tq[i], mc[i]);
      worst = std::max(worst, z);
      pass = pass && z <= 3.0;
      detail += fmt(" %.2f", z);
    }
  }
  return {pass, fmt("max z=%.2f (tol 3), z per s in {0.3,0.5,0.7}:", worst) + detail};
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / ("gfp_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  const std::vector<runner::json> configs{
      {{"experiment", "perimeter"},
       {"set", {{"type", "ball"}, {"center", {0.0, 0.0}}, {"radius", 1.0}}},
       {"domain", {{"type", "ball"}, {"center", {0.0, 0.0}}, {"radius", 2.0}}},
       {"s", {0.3, 0.5, 0.7}},
       {"engine", "heat-mc"},
       {"monte_carlo", {{"samples", 200000}}},
       {"seed", 21}},
      {{"experiment", "isoperimetry"},
       {"dim", 2},
       {"m", {0.3, 0.5}},
       {"shapes", {"halfspace", "ball", "box"}},
       {"s", {0.5}},
       {"monte_carlo", {{"samples", 100000}}},
       {"seed", 22}},
  };
  bool pass = true;
  std::size_t bytes = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto cfg = runner::parse_config(configs[i]);
    std::string csv[2];
    const int workers[2] = {1, 8};
    for (int k = 0; k < 2; ++k) {
      ScopedWorkers w(workers[k]);
      const fs::path out = dir / (std::to_string(i) + "_w" + std::to_string(workers[k]));
      runner::run_to_directory(cfg, out);
      csv[k] = runner::read_file(out / "results.csv");
    }
    pass = pass && csv[0] == csv[1] && !csv[0].empty();
    bytes += csv[0].size();
  }
  fs::remove_all(dir);
  return {pass, fmt("%zu configs, %zu CSV bytes compared between 1 and 8 workers", configs.size(), bytes)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "subordination identity", 30.0, subordination_identity},
      {2, "gamma-limit constant", 10.0, gamma_limit_constant},
      {3, "dimension-free halfspace perimeter", 0.0, dimension_free},
      {4, "cube density", 300.0, cube_density_check},
      {5, "kernel bound audit", 0.0, bounds_audit},
      {6, "coarea", 120.0, coarea},
      {7, "seminorm identities", 0.0, seminorm_identities},
      {8, "isoperimetry", 0.0, isoperimetry},
      {9, "engine cross-validation", 0.0, engine_cross_validation},
      {10, "determinism across workers", 0.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit <= 0.0 || secs < c.time_limit;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::string timing = fmt("%.1f s", secs);
    if (c.time_limit > 0.0) timing += fmt(" (limit %.0f s)", c.time_limit);
    std::printf("[%s] %2d %s: %s; %s\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
