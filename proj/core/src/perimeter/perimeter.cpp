#include "gfp/perimeter/perimeter.hpp"

#include <cmath>
#include <optional>

#include "gfp/numerics/errors.hpp"
#include "gfp/numerics/monte_carlo.hpp"
#include "gfp/perimeter/halfspace.hpp"
#include "gfp/perimeter/heat_mc.hpp"
#include "gfp/perimeter/tensor.hpp"
#include "gfp/perimeter/time_grid.hpp"

namespace gfp {

namespace {

enum Part { kLocal = 1, kNonlocal = 2 };

void check_inputs(const SetExpr& e, const Domain& omega, const std::vector<double>& s_list) {
  if (!e.valid()) throw DomainError("perimeter: empty set expression");
  if (e.dim() != omega.dim()) throw DomainError("perimeter: set and domain dimensions differ");
  if (s_list.empty()) throw DomainError("perimeter: no orders given");
  for (double s : s_list)
    if (!(s > 0.0 && s < 1.0)) throw DomainError("fractional order s must lie in (0, 1)");
}

// Whole space (true) or empty set (false) when the tree says so directly.
std::optional<bool> trivial_set(const SetExpr& e) {
  const auto& v = e.node().value;
  if (const auto* u = std::get_if<Union>(&v); u && u->children.empty()) return false;
  if (const auto* i = std::get_if<Intersection>(&v); i && i->children.empty()) return true;
  if (const auto* c = std::get_if<Complement>(&v)) {
    if (auto inner = trivial_set(c->child)) return !*inner;
  }
  return std::nullopt;
}

Estimate exact_zero() { return {0.0, 0.0, 0, "exact"}; }

struct Parts {
  std::vector<Estimate> local;
  std::vector<Estimate> nonlocal;
};

Parts zero_parts(std::size_t n) {
  return {std::vector<Estimate>(n, exact_zero()), std::vector<Estimate>(n, exact_zero())};
}

Parts semi_analytic(const SetExpr& e, const Domain& omega, const std::vector<double>& s_list) {
  const SetExpr* leaf = &e;
  if (const auto* c = std::get_if<Complement>(&e.node().value)) leaf = &c->child;
  const auto* h = std::get_if<Halfspace>(&leaf->node().value);
  if (!h || omega.bounded())
    throw UnsupportedShape("semi-analytic engine covers halfspaces in the whole space only");
  Parts out = zero_parts(s_list.size());
  for (std::size_t j = 0; j < s_list.size(); ++j) out.local[j] = halfspace_frac_perimeter(h->offset, s_list[j]);
  return out;
}

Parts heat_mc(const SetExpr& e, const Domain& omega, const std::vector<double>& s_list, const McConfig& mc,
              int parts) {
  mc.validate();
  const LogTimeGrid grid(mc.t_min, mc.t_tail, mc.t_nodes);
  std::vector<SubordinationWeights> weights;
  for (double s : s_list) weights.push_back(grid.weights(s, mc.head_exponent));

  HeatMcProblem problem;
  problem.dim = e.dim();
  problem.features = 2;
  problem.feature = [&](PointView x, std::span<double> f) {
    f[0] = contains(e, x) ? 1.0 : 0.0;
    f[1] = omega.contains(x) ? 1.0 : 0.0;
  };
  problem.weights = weights;

  const std::uint64_t evals = mc.samples * static_cast<std::uint64_t>(mc.t_nodes + 1);
  const auto to_estimate = [&](const VectorMean& vm, std::size_t j) {
    Estimate est = vm.component(j, "heat-mc");
    est.evals = evals;
    return est;
  };

  Parts out = zero_parts(s_list.size());
  if (parts & kLocal) {
    HeatMcProblem local = problem;
    if (omega.bounded()) local.proposal = omega.bounding_box();
    local.active = [](std::span<const double> fx) { return fx[1] != 0.0; };
    local.score = [](std::span<const double> fx, std::span<const double> fy, std::span<double> sc) {
      sc[0] = fx[0] != fy[0] ? 0.5 * fx[1] * fy[1] : 0.0;
    };
    const auto vm = run_heat_mc(local, grid, mc.samples, mc.stream);
    for (std::size_t j = 0; j < s_list.size(); ++j) out.local[j] = to_estimate(vm, j);
  }
  if ((parts & kNonlocal) && omega.bounded()) {
    HeatMcProblem nonlocal = problem;
    nonlocal.score = [](std::span<const double> fx, std::span<const double> fy, std::span<double> sc) {
      sc[0] = (fx[0] != fy[0] && fx[1] != fy[1]) ? 0.5 : 0.0;
    };
    const auto vm = run_heat_mc(nonlocal, grid, mc.samples, mc.stream.substream(1));
    for (std::size_t j = 0; j < s_list.size(); ++j) out.nonlocal[j] = to_estimate(vm, j);
  }
  return out;
}

struct PairJob {
  SetExpr a;
  SetExpr b;
};

std::vector<Estimate> subordinate_pairs(const std::vector<PairJob>& pairs, const std::vector<double>& s_list,
                                        const TensorConfig& cfg) {
  const LogTimeGrid grid(cfg.t_min, cfg.t_tail, cfg.t_nodes);
  const std::size_t nk = grid.times().size();
  const std::size_t per_pair = nk + 1;
  std::vector<Estimate> evals(pairs.size() * per_pair);
  parallel_for(evals.size(), [&](std::size_t i) {
    const auto& job = pairs[i / per_pair];
    const std::size_t k = i % per_pair;
    if (k < nk) {
      evals[i] = pair_correlation(job.a, job.b, grid.times()[k], cfg.rel_tol);
    } else {
      const auto ma = sliced_measure(job.a, 0.01 * cfg.rel_tol);
      const auto mb = sliced_measure(job.b, 0.01 * cfg.rel_tol);
      evals[i] = {ma.value * mb.value, ma.error * mb.value + mb.error * ma.value, ma.evals + mb.evals, "slicing"};
    }
  });

  std::vector<double> j(nk, 0.0), j_err(nk, 0.0);
  double j_inf = 0.0, j_inf_err = 0.0;
  std::uint64_t total_evals = 0;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (std::size_t k = 0; k < nk; ++k) {
      j[k] += evals[p * per_pair + k].value;
      j_err[k] += evals[p * per_pair + k].error;
    }
    j_inf += evals[p * per_pair + nk].value;
    j_inf_err += evals[p * per_pair + nk].error;
  }
  for (const auto& e : evals) total_evals += e.evals;

  std::vector<Estimate> out;
  for (double s : s_list) {
    const auto w = grid.weights(s, 0.5, true);
    const auto wc = grid.coarse_weights(s, 0.5, true);
    Estimate est;
    est.value = w.apply(j, j_inf);
    double err = std::abs(est.value - wc.apply(j, j_inf)) + std::abs(w.limit) * j_inf_err;
    for (std::size_t k = 0; k < nk; ++k) err += std::abs(w.node[k]) * j_err[k];
    est.error = err;
    est.evals = total_evals;
    est.method = "tensor-quadrature";
    out.push_back(est);
  }
  return out;
}

Parts tensor(const SetExpr& e, const Domain& omega, const std::vector<double>& s_list, const TensorConfig& cfg,
             int parts) {
  cfg.validate();
  if (e.dim() > 2) throw DomainError("the tensor-quadrature engine supports N <= 2");
  const int n = e.dim();
  const SetExpr ec = SetExpr::complement(e);
  Parts out = zero_parts(s_list.size());
  if (!omega.bounded()) {
    if (parts & kLocal) out.local = subordinate_pairs({{e, ec}}, s_list, cfg);
    return out;
  }
  const SetExpr o = omega.as_set();
  const SetExpr oc = SetExpr::complement(o);
  const auto meet = [n](const SetExpr& x, const SetExpr& y) { return SetExpr::intersection_of(n, {x, y}); };
  if (parts & kLocal) out.local = subordinate_pairs({{meet(e, o), meet(ec, o)}}, s_list, cfg);
  if (parts & kNonlocal)
    out.nonlocal = subordinate_pairs({{meet(e, o), meet(ec, oc)}, {meet(e, oc), meet(ec, o)}}, s_list, cfg);
  return out;
}

Parts compute(const SetExpr& e, const Domain& omega, const std::vector<double>& s_list, Engine engine,
              const McConfig& mc, const TensorConfig& tc, int parts) {
  check_inputs(e, omega, s_list);
  if (trivial_set(e)) return zero_parts(s_list.size());
  switch (engine) {
    case Engine::SemiAnalytic:
      return semi_analytic(e, omega, s_list);
    case Engine::TensorQuadrature:
      return tensor(e, omega, s_list, tc, parts);
    case Engine::HeatMc:
      return heat_mc(e, omega, s_list, mc, parts);
  }
  throw DomainError("unknown engine");
}

}  // namespace

Estimate frac_perimeter_local(const SetExpr& e, const Domain& omega, double s, Engine engine, const McConfig& mc,
                              const TensorConfig& tensor) {
  return compute(e, omega, {s}, engine, mc, tensor, kLocal).local.front();
}

std::vector<Estimate> frac_perimeter_local_sweep(const SetExpr& e, const Domain& omega,
                                                 const std::vector<double>& s_list, Engine engine,
                                                 const McConfig& mc, const TensorConfig& tensor) {
  return compute(e, omega, s_list, engine, mc, tensor, kLocal).local;
}

Estimate frac_perimeter_nonlocal(const SetExpr& e, const Domain& omega, double s, const McConfig& mc) {
  return compute(e, omega, {s}, Engine::HeatMc, mc, {}, kNonlocal).nonlocal.front();
}

std::vector<PerimeterResult> frac_perimeter_sweep(const SetExpr& e, const Domain& omega,
                                                  const std::vector<double>& s_list, Engine engine,
                                                  const McConfig& mc, const TensorConfig& tensor) {
  const Parts parts = compute(e, omega, s_list, engine, mc, tensor, kLocal | kNonlocal);
  std::vector<PerimeterResult> rows;
  for (std::size_t j = 0; j < s_list.size(); ++j) {
    PerimeterResult r;
    r.local = parts.local[j];
    r.nonlocal = parts.nonlocal[j];
    r.total.value = r.local.value + r.nonlocal.value;
    r.total.error = combined_error(r.local, r.nonlocal);
    r.total.evals = r.local.evals + r.nonlocal.evals;
    r.total.method = r.local.method;
    r.s = s_list[j];
    r.engine = engine;
    r.set = e;
    r.domain = omega;
    rows.push_back(std::move(r));
  }
  return rows;
}

PerimeterResult frac_perimeter(const SetExpr& e, const Domain& omega, double s, Engine engine, const McConfig& mc,
                               const TensorConfig& tensor) {
  return frac_perimeter_sweep(e, omega, {s}, engine, mc, tensor).front();
}

}  // namespace gfp
