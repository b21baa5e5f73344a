#include "gfp/runner/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "gfp/geometry/measure.hpp"
#include "gfp/kernel/bounds.hpp"
#include "gfp/kernel/subordinated.hpp"
#include "gfp/limits/cube.hpp"
#include "gfp/limits/isoperimetry.hpp"
#include "gfp/limits/sweep.hpp"
#include "gfp/numerics/errors.hpp"
#include "gfp/numerics/monte_carlo.hpp"
#include "gfp/perimeter/perimeter.hpp"
#include "gfp/perimeter/seminorm.hpp"

namespace gfp::runner {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double num_from(const json& j) { return j.is_null() ? kNaN : j.get<double>(); }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json estimate_json(const Estimate& e) { return {{"value", num(e.value)}, {"error", num(e.error)}}; }

struct UnitResult {
  std::vector<Row> rows;
  json summary;
  std::uint64_t evals = 0;
};

struct Unit {
  std::string key;
  std::string op;
  std::function<UnitResult()> compute;
};

UnitResult with_row_evals(UnitResult u) {
  u.evals = 0;
  for (const auto& r : u.rows) u.evals += r.evals;
  return u;
}

Row estimate_row(std::string shape, const Estimate& e) {
  Row row;
  row.shape = std::move(shape);
  row.value = e.value;
  row.error = e.error;
  row.method = e.method;
  row.evals = e.evals;
  return row;
}

std::string point_tag(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ' ';
    out += fmt(p[i]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------

std::vector<Unit> kernel_identity_units(const ExperimentConfig& cfg) {
  std::vector<Unit> units;
  for (int dim : cfg.dims) {
    for (double s : cfg.s) {
      for (double r : cfg.r) {
        units.push_back({"N=" + std::to_string(dim) + ",s=" + fmt(s) + ",r=" + fmt(r), "euclidean_subordination",
                         [&cfg, dim, s, r] {
                           const Estimate e = euclidean_subordination(r, s, dim, cfg.quadrature);
                           const double ref = c_euclid(dim, s) * std::pow(r, -(dim + s));
                           Row row = estimate_row("N=" + std::to_string(dim), e);
                           row.s = s;
                           row.r = r;
                           row.extra = {{"reference", ref}, {"relative_error", std::abs(e.value / ref - 1.0)}};
                           return with_row_evals({{row}, nullptr});
                         }});
      }
    }
  }
  return units;
}

std::vector<Unit> bounds_audit_units(const ExperimentConfig& cfg) {
  std::vector<Unit> units;
  for (int dim : cfg.dims) {
    units.push_back({"N=" + std::to_string(dim), "kernel_bounds", [&cfg, dim] {
                       struct Slot {
                         bool violated = false;
                         double lower_margin = 0.0;
                         double upper_margin = 0.0;
                         std::uint64_t evals = 0;
                       };
                       std::vector<Slot> slots(cfg.instances);
                       const RngStream stream = RngStream{cfg.seed, 0}.substream(static_cast<std::uint64_t>(dim));
                       parallel_for(cfg.instances, [&](std::size_t i) {
                         RandomSource src(stream, i);
                         Point x(dim), y(dim);
                         for (auto& v : x) v = cfg.radius * (2.0 * src.uniform() - 1.0);
                         for (auto& v : y) v = cfg.radius * (2.0 * src.uniform() - 1.0);
                         const double s = cfg.s_lo + (cfg.s_hi - cfg.s_lo) * src.uniform();
                         const Estimate k = k_sigma(x, y, s, cfg.quadrature);
                         const double lower = kernel_lower_bound(x, y, s);
                         const Estimate upper = kernel_upper_bound(x, y, s, cfg.quadrature);
                         const double slack = 1e-12 * std::max(1.0, k.value);
                         Slot& slot = slots[i];
                         slot.lower_margin = (k.value + k.error + slack - lower) / lower;
                         slot.upper_margin = (upper.value + upper.error + slack - (k.value - k.error)) / upper.value;
                         slot.violated = slot.lower_margin < 0.0 || slot.upper_margin < 0.0;
                         slot.evals = k.evals + upper.evals;
                       });
                       Row row;
                       row.shape = "N=" + std::to_string(dim);
                       row.method = "k_sigma vs lower and radial upper bound";
                       double lo = kInf, up = kInf;
                       std::uint64_t violations = 0;
                       for (const auto& slot : slots) {
                         violations += slot.violated;
                         lo = std::min(lo, slot.lower_margin);
                         up = std::min(up, slot.upper_margin);
                         row.evals += slot.evals;
                       }
                       row.value = static_cast<double>(violations);
                       row.extra = {{"instances", cfg.instances},
                                    {"min_lower_margin", num(lo)},
                                    {"min_upper_margin", num(up)}};
                       return with_row_evals({{row}, nullptr});
                     }});
  }
  return units;
}

Row perimeter_row(const PerimeterResult& p) {
  Row row = estimate_row(describe(p.set), p.total);
  row.s = p.s;
  row.extra = {{"local", estimate_json(p.local)}, {"nonlocal", estimate_json(p.nonlocal)}};
  return row;
}

std::vector<Unit> perimeter_units(const ExperimentConfig& cfg) {
  return {{"all", "frac_perimeter", [&cfg] {
             const auto results = frac_perimeter_sweep(*cfg.set, *cfg.domain, cfg.s, cfg.engine, cfg.mc, cfg.tensor);
             UnitResult u;
             for (const auto& p : results) u.rows.push_back(perimeter_row(p));
             // heat-mc orders share their samples
             for (const auto& r : u.rows) u.evals = cfg.engine == Engine::HeatMc ? std::max(u.evals, r.evals) : u.evals + r.evals;
             return u;
           }}};
}

std::vector<Unit> sweep_units(const ExperimentConfig& cfg) {
  return {{"all", "gamma_limit_sweep", [&cfg] {
             const SweepResult res = gamma_limit_sweep(*cfg.set, *cfg.domain, cfg.s, cfg.engine, cfg.mc, cfg.tensor);
             UnitResult u;
             for (const auto& sr : res.rows) {
               Row row = estimate_row(describe(*cfg.set), sr.perimeter);
               row.s = sr.s;
               row.extra = {{"scaled", num(sr.scaled)}, {"scaled_error", num(sr.error)}};
               u.rows.push_back(std::move(row));
               u.evals = cfg.engine == Engine::HeatMc ? std::max(u.evals, sr.perimeter.evals) : u.evals + sr.perimeter.evals;
             }
             u.summary = {{"extrapolated", num(res.extrapolated)},
                          {"extrapolated_error", num(res.extrapolated_error)},
                          {"slope", num(res.slope)},
                          {"reference", num(res.reference)},
                          {"relative_gap", num(res.relative_gap)},
                          {"model", res.model},
                          {"exploratory", res.exploratory}};
             return u;
           }}};
}

std::vector<Unit> cube_units(const ExperimentConfig& cfg) {
  std::vector<Unit> units;
  for (std::size_t i = 0; i < cfg.x0.size(); ++i) {
    units.push_back({"x0=" + point_tag(cfg.x0[i]), "cube_density", [&cfg, i] {
                       CubeExperiment exp{cfg.x0[i], cfg.r, cfg.s, cfg.normal_axis, cfg.t_min_scale};
                       McConfig mc = cfg.mc;
                       mc.stream = RngStream{cfg.seed, 0}.substream(i);
                       const CubeResult res = cube_density(exp, mc);
                       UnitResult u;
                       for (const auto& cr : res.rows) {
                         Row row = estimate_row("cube x0=" + point_tag(cfg.x0[i]), cr.normalized);
                         row.s = cr.s;
                         row.r = cr.r;
                         row.extra = {{"target", cr.target},
                                      {"upper_bound", cr.upper_bound},
                                      {"limit_ratio", num(cr.limit_ratio)},
                                      {"relative_error", num(cr.relative_error())}};
                         u.rows.push_back(std::move(row));
                       }
                       u.summary = {{"x0", cfg.x0[i]}, {"calibrated_C", num(res.calibrated_C)}};
                       // orders at one r share their samples
                       for (std::size_t k = 0; k < u.rows.size(); k += cfg.s.size()) u.evals += u.rows[k].evals;
                       return u;
                     }});
  }
  return units;
}

std::vector<Unit> isoperimetry_units(const ExperimentConfig& cfg) {
  return {{"all", "isoperimetric_scan", [&cfg] {
             McConfig mc = cfg.mc;
             const auto rows = isoperimetric_scan(cfg.s, cfg.m, cfg.shapes, cfg.dim, mc);
             UnitResult u;
             for (const auto& ir : rows) {
               Row row = estimate_row(std::string(to_string(ir.shape)), ir.deficit);
               row.s = ir.s;
               row.m = ir.m;
               if (!ir.ok()) {
                 row.value = kNaN;
                 row.error = kNaN;
                 row.method = "failed";
               }
               row.extra = {{"parameter", num(ir.parameter)},
                            {"perimeter", estimate_json(ir.perimeter)},
                            {"isoperimetric", estimate_json(ir.isoperimetric)},
                            {"status", ir.status}};
               u.evals += ir.perimeter.evals;
               u.rows.push_back(std::move(row));
             }
             u.evals /= std::max<std::size_t>(1, cfg.s.size());
             return u;
           }}};
}

std::vector<Unit> coarea_units(const ExperimentConfig& cfg) {
  std::vector<Unit> units;
  for (std::size_t i = 0; i < cfg.s.size(); ++i) {
    units.push_back({"s=" + fmt(cfg.s[i]), "coarea_check", [&cfg, i] {
                       McConfig mc = cfg.mc;
                       mc.stream = RngStream{cfg.seed, 0}.substream(i);
                       const LevelFunction u_fn = cfg.function;
                       const double s = cfg.s[i];
                       const CoareaResult res = coarea_check([u_fn](PointView x) { return u_fn(x); }, *cfg.domain, s,
                                                             cfg.levels, mc);
                       UnitResult u;
                       auto add = [&](const char* part, const Estimate& e) {
                         Row row = estimate_row(std::string("coarea ") + part, e);
                         row.s = s;
                         u.rows.push_back(std::move(row));
                       };
                       add("lhs", res.lhs);
                       add("rhs", res.rhs);
                       add("difference", res.difference);
                       add("discretization", res.discretization);
                       u.summary = {{"s", s},
                                    {"levels", res.levels},
                                    {"gap", num(std::abs(res.lhs.value - res.rhs.value))},
                                    {"bound_unit", num(res.difference.error + res.discretization.value)}};
                       u.evals = res.lhs.evals;
                       return u;
                     }});
  }
  return units;
}

std::vector<Unit> make_units(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::KernelIdentity:
      return kernel_identity_units(cfg);
    case Experiment::BoundsAudit:
      return bounds_audit_units(cfg);
    case Experiment::Perimeter:
      return perimeter_units(cfg);
    case Experiment::Sweep:
      return sweep_units(cfg);
    case Experiment::CubeDensity:
      return cube_units(cfg);
    case Experiment::Isoperimetry:
      return isoperimetry_units(cfg);
    case Experiment::Coarea:
      return coarea_units(cfg);
  }
  return {};
}

// ---------------------------------------------------------------------------

void evaluate_acceptance(const ExperimentConfig& cfg, RunResult& out) {
  const AcceptanceRules& a = cfg.acceptance;
  auto add = [&](const char* rule, double threshold, double observed, bool pass) {
    out.acceptance.push_back({rule, threshold, observed, pass});
  };
  const auto& rows = out.rows;
  switch (cfg.experiment) {
    case Experiment::KernelIdentity:
      if (a.max_relative_error) {
        double worst = 0.0;
        for (const auto& r : rows) worst = std::max(worst, r.extra.at("relative_error").get<double>());
        add("max_relative_error", *a.max_relative_error, worst, worst <= *a.max_relative_error);
      }
      break;
    case Experiment::BoundsAudit:
      if (a.max_violations) {
        double total = 0.0;
        for (const auto& r : rows) total += r.value;
        add("max_violations", static_cast<double>(*a.max_violations), total,
            total <= static_cast<double>(*a.max_violations));
      }
      break;
    case Experiment::Perimeter:
      if (a.reference && a.sigma) {
        double worst = 0.0;
        for (const auto& r : rows) worst = std::max(worst, std::abs(r.value - *a.reference) / r.error);
        add("sigma", *a.sigma, worst, worst <= *a.sigma);
      }
      if (a.reference && a.max_relative_gap) {
        double worst = 0.0;
        for (const auto& r : rows) worst = std::max(worst, std::abs(r.value / *a.reference - 1.0));
        add("max_relative_gap", *a.max_relative_gap, worst, worst <= *a.max_relative_gap);
      }
      break;
    case Experiment::Sweep:
      if (a.max_relative_gap) {
        const double gap = num_from(out.results.at("all").at("relative_gap"));
        add("max_relative_gap", *a.max_relative_gap, gap, gap <= *a.max_relative_gap);
      }
      break;
    case Experiment::CubeDensity: {
      const double r_min = *std::min_element(cfg.r.begin(), cfg.r.end());
      if (a.max_relative_error) {
        double worst = 0.0;
        for (const auto& r : rows)
          if (*r.r == r_min) worst = std::max(worst, num_from(r.extra.at("relative_error")));
        add("max_relative_error", *a.max_relative_error, worst, worst <= *a.max_relative_error);
      }
      if (a.monotone.value_or(false)) {
        // Along decreasing r the relative error may grow by at most sigma
        // combined standard errors.
        double violations = 0.0;
        for (const auto& x0 : cfg.x0) {
          const std::string shape = "cube x0=" + point_tag(x0);
          for (double s : cfg.s) {
            std::vector<const Row*> seq;
            for (const auto& r : rows)
              if (r.shape == shape && *r.s == s) seq.push_back(&r);
            std::sort(seq.begin(), seq.end(), [](const Row* p, const Row* q) { return *p->r > *q->r; });
            for (std::size_t k = 1; k < seq.size(); ++k) {
              const double target = seq[k]->extra.at("target").get<double>();
              const double e_prev = std::abs(seq[k - 1]->value / target - 1.0);
              const double e_next = std::abs(seq[k]->value / target - 1.0);
              const double slack = *a.sigma * std::hypot(seq[k - 1]->error, seq[k]->error) / target;
              if (!(e_next <= e_prev + slack)) violations += 1.0;
            }
          }
        }
        add("monotone", 0.0, violations, violations == 0.0);
      }
      break;
    }
    case Experiment::Isoperimetry:
      if (a.sigma) {
        double violations = 0.0;
        for (const auto& r : rows) {
          if (r.method == "failed") {
            violations += 1.0;
          } else if (r.shape == "halfspace") {
            violations += std::abs(r.value) > *a.sigma * r.error;
          } else {
            violations += !(r.value > *a.sigma * r.error);
          }
        }
        add("sigma", *a.sigma, violations, violations == 0.0);
      }
      break;
    case Experiment::Coarea:
      if (a.sigma) {
        double worst = 0.0;
        for (const auto& [key, frag] : out.results.items())
          worst = std::max(worst, num_from(frag.at("gap")) / num_from(frag.at("bound_unit")));
        add("sigma", *a.sigma, worst, worst <= *a.sigma);
      }
      break;
  }
}

bool parallel_units(Experiment e) { return e == Experiment::KernelIdentity; }

}  // namespace

json to_json(const Row& row) {
  json j = {{"shape", row.shape},         {"value", num(row.value)}, {"error", num(row.error)},
            {"method", row.method},       {"evals", row.evals},      {"extra", row.extra}};
  if (row.s) j["s"] = *row.s;
  if (row.r) j["r"] = *row.r;
  if (row.m) j["m"] = *row.m;
  return j;
}

Row row_from_json(const json& j) {
  Row row;
  row.shape = j.at("shape").get<std::string>();
  row.value = num_from(j.at("value"));
  row.error = num_from(j.at("error"));
  row.method = j.at("method").get<std::string>();
  row.evals = j.at("evals").get<std::uint64_t>();
  row.extra = j.at("extra");
  if (j.contains("s")) row.s = j.at("s").get<double>();
  if (j.contains("r")) row.r = j.at("r").get<double>();
  if (j.contains("m")) row.m = j.at("m").get<double>();
  return row;
}

bool RunResult::passed() const {
  return std::all_of(acceptance.begin(), acceptance.end(), [](const AcceptanceOutcome& o) { return o.pass; });
}

RunResult run_experiment(const ExperimentConfig& cfg, const json& cached) {
  const std::vector<Unit> units = make_units(cfg);
  std::vector<std::optional<UnitResult>> results(units.size());
  std::vector<std::size_t> todo;
  RunResult out;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (cached.is_object() && cached.contains(units[i].key)) {
      const json& c = cached.at(units[i].key);
      UnitResult u;
      for (const auto& r : c.at("rows")) u.rows.push_back(row_from_json(r));
      u.summary = c.at("summary");
      results[i] = std::move(u);
      ++out.cache_hits;
    } else {
      todo.push_back(i);
    }
  }
  auto compute = [&](std::size_t k) { results[todo[k]] = units[todo[k]].compute(); };
  if (parallel_units(cfg.experiment)) {
    parallel_for(todo.size(), compute);
  } else {
    for (std::size_t k = 0; k < todo.size(); ++k) compute(k);
  }
  for (std::size_t k : todo) out.evals[units[k].op] += results[k]->evals;

  for (std::size_t i = 0; i < units.size(); ++i) {
    UnitResult& u = *results[i];
    json rows = json::array();
    for (const auto& r : u.rows) rows.push_back(to_json(r));
    out.cache[units[i].key] = {{"rows", rows}, {"summary", u.summary}};
    if (!u.summary.is_null()) out.results[units[i].key] = u.summary;
    for (auto& r : u.rows) out.rows.push_back(std::move(r));
  }
  evaluate_acceptance(cfg, out);
  return out;
}

}  // namespace gfp::runner
