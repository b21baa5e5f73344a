#include "gfp/perimeter/seminorm.hpp"

#include <algorithm>
#include <cmath>

#include "gfp/numerics/errors.hpp"
#include "gfp/perimeter/heat_mc.hpp"

namespace gfp {

namespace {

double checked_value(const PointFunction& u, PointView x) {
  const double v = u(x);
  if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) throw DomainError("u must take values in [0, 1]");
  return v;
}

HeatMcProblem base_problem(const PointFunction& u, const Domain& omega) {
  HeatMcProblem problem;
  problem.dim = omega.dim();
  if (omega.bounded()) problem.proposal = omega.bounding_box();
  problem.features = 2;
  problem.feature = [&u, &omega](PointView x, std::span<double> f) {
    f[1] = omega.contains(x) ? 1.0 : 0.0;
    f[0] = f[1] != 0.0 ? checked_value(u, x) : 0.0;
  };
  problem.active = [](std::span<const double> fx) { return fx[1] != 0.0; };
  return problem;
}

// Number of tau_k = (k + 1/2)/levels strictly between a and b.
int crossings(double a, double b, int levels) {
  if (a > b) std::swap(a, b);
  const auto below = [levels](double v) {
    // count of k with tau_k < v
    const double x = v * levels - 0.5;
    if (x < 0.0) return 0;
    return std::min(levels, static_cast<int>(std::ceil(x)));
  };
  return below(b) - below(a);
}

}  // namespace

Estimate seminorm(const PointFunction& u, const Domain& omega, double s, int p, const McConfig& cfg) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("fractional order s must lie in (0, 1)");
  if (p < 1) throw DomainError("seminorm: p must be at least 1");
  if (!(s * p < 2.0)) throw DomainError("seminorm: need s p < 2");
  cfg.validate();
  const LogTimeGrid grid(cfg.t_min, cfg.t_tail, cfg.t_nodes);
  HeatMcProblem problem = base_problem(u, omega);
  problem.score = [p](std::span<const double> fx, std::span<const double> fy, std::span<double> sc) {
    sc[0] = fx[1] * fy[1] * std::pow(std::abs(fx[0] - fy[0]), p);
  };
  problem.weights = {grid.weights(s * p, cfg.head_exponent)};
  const auto vm = run_heat_mc(problem, grid, cfg.samples, cfg.stream);
  Estimate est = vm.component(0, "heat-mc");
  est.evals = cfg.samples * static_cast<std::uint64_t>(cfg.t_nodes + 1);
  return est;
}

bool CoareaResult::consistent(double k) const {
  return std::abs(lhs.value - rhs.value) <= k * (difference.error + discretization.value);
}

CoareaResult coarea_check(const PointFunction& u, const Domain& omega, double s, int levels, const McConfig& cfg) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("fractional order s must lie in (0, 1)");
  if (levels < 2) throw DomainError("coarea_check: at least 2 levels");
  cfg.validate();
  const int coarse = levels / 2;
  const LogTimeGrid grid(cfg.t_min, cfg.t_tail, cfg.t_nodes);
  HeatMcProblem problem = base_problem(u, omega);
  problem.scores = 4;
  problem.score = [levels, coarse](std::span<const double> fx, std::span<const double> fy, std::span<double> sc) {
    const double w = 0.5 * fx[1] * fy[1];
    if (w == 0.0) {
      std::fill(sc.begin(), sc.end(), 0.0);
      return;
    }
    const double l = w * std::abs(fx[0] - fy[0]);
    const double r = w * crossings(fx[0], fy[0], levels) / levels;
    const double rc = w * crossings(fx[0], fy[0], coarse) / coarse;
    sc[0] = l;
    sc[1] = r;
    sc[2] = l - r;
    sc[3] = r - rc;
  };
  problem.weights = {grid.weights(s, cfg.head_exponent)};
  const auto vm = run_heat_mc(problem, grid, cfg.samples, cfg.stream);

  CoareaResult out;
  out.levels = levels;
  out.lhs = vm.component(0, "heat-mc");
  out.rhs = vm.component(1, "heat-mc");
  out.difference = vm.component(2, "heat-mc");
  out.discretization = vm.component(3, "heat-mc");
  out.discretization.value = std::abs(out.discretization.value);
  const std::uint64_t evals = cfg.samples * static_cast<std::uint64_t>(cfg.t_nodes + 1);
  for (Estimate* e : {&out.lhs, &out.rhs, &out.difference, &out.discretization}) e->evals = evals;
  return out;
}

}  // namespace gfp
