#include "gfp/runner/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gfp/limits/cube.hpp"
#include "gfp/numerics/errors.hpp"
#include "gfp/numerics/special.hpp"

namespace gfp::runner {

namespace {

constexpr Experiment kAll[] = {Experiment::KernelIdentity, Experiment::BoundsAudit, Experiment::Perimeter,
                               Experiment::Sweep,          Experiment::CubeDensity, Experiment::Isoperimetry,
                               Experiment::Coarea};

struct Reader {
  const json& j;

  bool has(const char* key) const { return j.contains(key); }

  double number(const char* key, double fallback) const {
    if (!has(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError(std::string("\"") + key + "\" must be a number");
    return v.get<double>();
  }

  std::int64_t integer(const char* key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(std::string("\"") + key + "\" must be an integer");
    return v.get<std::int64_t>();
  }

  std::string string(const char* key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_string()) throw ConfigError(std::string("\"") + key + "\" must be a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const char* key) const {
    if (!has(key)) throw ConfigError(std::string("missing \"") + key + "\"");
    const json& v = j.at(key);
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array() || v.empty()) throw ConfigError(std::string("\"") + key + "\" must be a non-empty array");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw ConfigError(std::string("\"") + key + "\" must contain numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  std::vector<int> integers(const char* key) const {
    if (!has(key)) throw ConfigError(std::string("missing \"") + key + "\"");
    const json& v = j.at(key);
    if (!v.is_array() || v.empty()) throw ConfigError(std::string("\"") + key + "\" must be a non-empty array");
    std::vector<int> out;
    for (const auto& x : v) {
      if (!x.is_number_integer()) throw ConfigError(std::string("\"") + key + "\" must contain integers");
      out.push_back(x.get<int>());
    }
    return out;
  }
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

std::vector<std::string> allowed_keys(Experiment e) {
  std::vector<std::string> keys{"experiment", "seed", "output", "acceptance"};
  auto add = [&](std::initializer_list<const char*> more) { keys.insert(keys.end(), more.begin(), more.end()); };
  switch (e) {
    case Experiment::KernelIdentity:
      add({"dims", "s", "r", "quadrature"});
      break;
    case Experiment::BoundsAudit:
      add({"dims", "instances", "radius", "s_range", "quadrature"});
      break;
    case Experiment::Perimeter:
    case Experiment::Sweep:
      add({"set", "domain", "s", "engine", "monte_carlo", "tensor"});
      break;
    case Experiment::CubeDensity:
      add({"x0", "r", "s", "t_min_scale", "normal_axis", "monte_carlo"});
      break;
    case Experiment::Isoperimetry:
      add({"dim", "m", "shapes", "s", "monte_carlo"});
      break;
    case Experiment::Coarea:
      add({"function", "domain", "s", "levels", "monte_carlo"});
      break;
  }
  return keys;
}

std::vector<std::string> acceptance_keys(Experiment e) {
  switch (e) {
    case Experiment::KernelIdentity:
      return {"max_relative_error"};
    case Experiment::BoundsAudit:
      return {"max_violations"};
    case Experiment::Perimeter:
      return {"reference", "sigma", "max_relative_gap"};
    case Experiment::Sweep:
      return {"max_relative_gap"};
    case Experiment::CubeDensity:
      return {"max_relative_error", "monotone", "sigma"};
    case Experiment::Isoperimetry:
    case Experiment::Coarea:
      return {"sigma"};
  }
  return {};
}

void check_allowed(const json& obj, const std::vector<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(where + ": unknown key \"" + key + "\"");
  }
}

bool uses_quadrature(Experiment e) { return e == Experiment::KernelIdentity || e == Experiment::BoundsAudit; }
bool uses_mc(Experiment e) { return !uses_quadrature(e); }
bool uses_set(Experiment e) { return e == Experiment::Perimeter || e == Experiment::Sweep; }

void parse_quadrature(const json& j, QuadratureSpec& q) {
  check_keys(j, {"scheme", "rel_tol", "abs_tol", "max_evals", "split_T"}, "quadrature");
  Reader r{j};
  try {
    q.scheme = quadrature_scheme_from_string(r.string("scheme", std::string(to_string(q.scheme))));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("quadrature: ") + e.what());
  }
  q.rel_tol = r.number("rel_tol", q.rel_tol);
  q.abs_tol = r.number("abs_tol", q.abs_tol);
  const auto evals = r.integer("max_evals", static_cast<std::int64_t>(q.max_evals));
  require(evals > 0, "quadrature: max_evals must be positive");
  q.max_evals = static_cast<std::uint64_t>(evals);
  q.split_T = r.number("split_T", q.split_T);
}

void parse_mc(const json& j, McConfig& mc) {
  check_keys(j, {"samples", "t_nodes", "t_min", "t_tail", "head_exponent"}, "monte_carlo");
  Reader r{j};
  const auto samples = r.integer("samples", static_cast<std::int64_t>(mc.samples));
  require(samples > 0, "monte_carlo: samples must be positive");
  mc.samples = static_cast<std::uint64_t>(samples);
  mc.t_nodes = static_cast<int>(r.integer("t_nodes", mc.t_nodes));
  mc.t_min = r.number("t_min", mc.t_min);
  mc.t_tail = r.number("t_tail", mc.t_tail);
  mc.head_exponent = r.number("head_exponent", mc.head_exponent);
}

void parse_tensor(const json& j, TensorConfig& t) {
  check_keys(j, {"t_min", "t_nodes", "t_tail", "rel_tol"}, "tensor");
  Reader r{j};
  t.t_min = r.number("t_min", t.t_min);
  t.t_nodes = static_cast<int>(r.integer("t_nodes", t.t_nodes));
  t.t_tail = r.number("t_tail", t.t_tail);
  t.rel_tol = r.number("rel_tol", t.rel_tol);
}

void parse_acceptance(const json& j, Experiment e, AcceptanceRules& a) {
  require(j.is_object(), "acceptance: expected an object");
  check_allowed(j, acceptance_keys(e), "acceptance");
  Reader r{j};
  if (r.has("max_relative_error")) a.max_relative_error = r.number("max_relative_error", 0.0);
  if (r.has("max_relative_gap")) a.max_relative_gap = r.number("max_relative_gap", 0.0);
  if (r.has("reference")) a.reference = r.number("reference", 0.0);
  if (r.has("sigma")) a.sigma = r.number("sigma", 0.0);
  if (r.has("max_violations")) {
    const auto v = r.integer("max_violations", 0);
    require(v >= 0, "acceptance: max_violations must be >= 0");
    a.max_violations = static_cast<std::uint64_t>(v);
  }
  if (r.has("monotone")) {
    require(j.at("monotone").is_boolean(), "acceptance: \"monotone\" must be a boolean");
    a.monotone = j.at("monotone").get<bool>();
  }
  for (auto v : {a.max_relative_error, a.max_relative_gap, a.sigma})
    require(!v || *v > 0.0, "acceptance: thresholds must be positive");
  if (e == Experiment::Perimeter) {
    require(!(a.sigma || a.max_relative_gap) || a.reference, "acceptance: \"sigma\" and \"max_relative_gap\" need \"reference\"");
  }
  if (e == Experiment::CubeDensity && a.monotone.value_or(false)) {
    require(a.sigma.has_value(), "acceptance: \"monotone\" needs \"sigma\" for the error-bar adjustment");
  }
}

void parse_function(const json& j, LevelFunction& f) {
  check_keys(j, {"type", "axis", "shift", "scale"}, "function");
  Reader r{j};
  f.type = r.string("type", f.type);
  require(f.type == "normal-cdf" || f.type == "ramp", "function: type must be \"normal-cdf\" or \"ramp\"");
  f.axis = static_cast<int>(r.integer("axis", f.axis));
  f.shift = r.number("shift", f.shift);
  f.scale = r.number("scale", f.scale);
  require(f.scale > 0.0, "function: scale must be positive");
}

void check_orders(const std::vector<double>& s) {
  for (double v : s) require(v > 0.0 && v < 1.0, "s values must lie in (0, 1), got " + json(v).dump());
}

json mc_json(const McConfig& mc) {
  return {{"samples", mc.samples},
          {"t_nodes", mc.t_nodes},
          {"t_min", mc.t_min},
          {"t_tail", mc.t_tail},
          {"head_exponent", mc.head_exponent}};
}

}  // namespace

double LevelFunction::operator()(PointView x) const {
  const double z = (x[static_cast<std::size_t>(axis)] - shift) / scale;
  if (type == "ramp") return std::clamp(0.5 + z, 0.0, 1.0);
  return normal_cdf(z);
}

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::KernelIdentity:
      return "kernel-identity";
    case Experiment::BoundsAudit:
      return "bounds-audit";
    case Experiment::Perimeter:
      return "perimeter";
    case Experiment::Sweep:
      return "sweep";
    case Experiment::CubeDensity:
      return "cube-density";
    case Experiment::Isoperimetry:
      return "isoperimetry";
    case Experiment::Coarea:
      return "coarea";
  }
  return "unknown";
}

Experiment experiment_from_string(std::string_view name) {
  for (Experiment e : kAll)
    if (to_string(e) == name) return e;
  throw ConfigError("unknown experiment \"" + std::string(name) + "\"");
}

ExperimentConfig parse_config(const json& j) {
  require(j.is_object(), "config: expected a JSON object");
  require(j.contains("experiment") && j.at("experiment").is_string(), "config: missing string \"experiment\"");
  ExperimentConfig cfg;
  cfg.experiment = experiment_from_string(j.at("experiment").get<std::string>());
  const Experiment e = cfg.experiment;
  check_allowed(j, allowed_keys(e), "config");
  Reader r{j};

  const auto seed = r.integer("seed", 0);
  require(seed >= 0, "\"seed\" must be a non-negative integer");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.output = r.string("output", std::string(to_string(e)));
  require(!cfg.output.empty(), "\"output\" must not be empty");
  if (r.has("acceptance")) parse_acceptance(j.at("acceptance"), e, cfg.acceptance);
  if (r.has("quadrature")) parse_quadrature(j.at("quadrature"), cfg.quadrature);
  if (r.has("monte_carlo")) parse_mc(j.at("monte_carlo"), cfg.mc);
  if (r.has("tensor")) parse_tensor(j.at("tensor"), cfg.tensor);
  cfg.mc.stream = RngStream{cfg.seed, 0};

  try {
    if (uses_quadrature(e)) cfg.quadrature.validate();
    if (uses_mc(e)) cfg.mc.validate();
    if (uses_set(e)) cfg.tensor.validate();
  } catch (const DomainError& err) {
    throw ConfigError(err.what());
  }

  switch (e) {
    case Experiment::KernelIdentity: {
      cfg.dims = r.integers("dims");
      cfg.s = r.numbers("s");
      cfg.r = r.numbers("r");
      check_orders(cfg.s);
      for (int d : cfg.dims) require(d >= 1 && d <= 16, "dims must lie in [1, 16]");
      for (double v : cfg.r) require(v > 0.0 && std::isfinite(v), "r values must be positive");
      break;
    }
    case Experiment::BoundsAudit: {
      cfg.dims = r.integers("dims");
      for (int d : cfg.dims) require(d >= 1 && d <= 16, "dims must lie in [1, 16]");
      const auto n = r.integer("instances", static_cast<std::int64_t>(cfg.instances));
      require(n >= 1, "\"instances\" must be positive");
      cfg.instances = static_cast<std::uint64_t>(n);
      cfg.radius = r.number("radius", cfg.radius);
      require(cfg.radius > 0.0, "\"radius\" must be positive");
      if (r.has("s_range")) {
        const auto range = r.numbers("s_range");
        require(range.size() == 2, "\"s_range\" must have two entries");
        cfg.s_lo = range[0];
        cfg.s_hi = range[1];
      }
      require(cfg.s_lo > 0.0 && cfg.s_lo < cfg.s_hi && cfg.s_hi < 1.0, "\"s_range\" must satisfy 0 < lo < hi < 1");
      break;
    }
    case Experiment::Perimeter:
    case Experiment::Sweep: {
      require(r.has("set") && r.has("domain"), "perimeter experiments need \"set\" and \"domain\"");
      cfg.set = set_from_json(j.at("set"));
      cfg.domain = domain_from_json(j.at("domain"));
      require(cfg.set->dim() == cfg.domain->dim(), "set and domain dimensions differ");
      cfg.s = r.numbers("s");
      check_orders(cfg.s);
      try {
        cfg.engine = engine_from_string(r.string("engine", std::string(to_string(cfg.engine))));
      } catch (const DomainError& err) {
        throw ConfigError(err.what());
      }
      if (cfg.engine == Engine::TensorQuadrature)
        require(cfg.set->dim() <= 2, "tensor-quadrature supports N <= 2");
      if (e == Experiment::Sweep)
        require(*std::max_element(cfg.s.begin(), cfg.s.end()) >= 0.99, "sweep: the largest s must be >= 0.99");
      break;
    }
    case Experiment::CubeDensity: {
      require(r.has("x0"), "missing \"x0\"");
      const json& xs = j.at("x0");
      require(xs.is_array() && !xs.empty(), "\"x0\" must be a non-empty array of points");
      for (const auto& p : xs) cfg.x0.push_back(point_from_json(p, "x0"));
      cfg.r = r.numbers("r");
      cfg.s = r.numbers("s");
      check_orders(cfg.s);
      cfg.t_min_scale = r.number("t_min_scale", cfg.t_min_scale);
      cfg.normal_axis = static_cast<int>(r.integer("normal_axis", cfg.normal_axis));
      for (const auto& p : cfg.x0) {
        CubeExperiment exp{p, cfg.r, cfg.s, cfg.normal_axis, cfg.t_min_scale};
        try {
          exp.validate();
        } catch (const DomainError& err) {
          throw ConfigError(err.what());
        }
      }
      break;
    }
    case Experiment::Isoperimetry: {
      cfg.dim = static_cast<int>(r.integer("dim", cfg.dim));
      require(cfg.dim >= 1 && cfg.dim <= 16, "\"dim\" must lie in [1, 16]");
      cfg.m = r.numbers("m");
      for (double v : cfg.m) require(v > 0.0 && v < 1.0, "m values must lie in (0, 1)");
      cfg.s = r.numbers("s");
      check_orders(cfg.s);
      require(r.has("shapes") && j.at("shapes").is_array() && !j.at("shapes").empty(),
              "\"shapes\" must be a non-empty array");
      for (const auto& sh : j.at("shapes")) {
        require(sh.is_string(), "\"shapes\" must contain strings");
        try {
          cfg.shapes.push_back(iso_shape_from_string(sh.get<std::string>()));
        } catch (const DomainError& err) {
          throw ConfigError(err.what());
        }
      }
      break;
    }
    case Experiment::Coarea: {
      require(r.has("domain"), "coarea needs \"domain\"");
      cfg.domain = domain_from_json(j.at("domain"));
      if (r.has("function")) parse_function(j.at("function"), cfg.function);
      require(cfg.function.axis >= 0 && cfg.function.axis < cfg.domain->dim(), "function: axis out of range");
      cfg.s = r.numbers("s");
      check_orders(cfg.s);
      cfg.levels = static_cast<int>(r.integer("levels", cfg.levels));
      require(cfg.levels >= 2 && cfg.levels % 2 == 0, "\"levels\" must be even and at least 2");
      break;
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& cfg) {
  const Experiment e = cfg.experiment;
  json j;
  j["experiment"] = to_string(e);
  j["seed"] = cfg.seed;
  j["output"] = cfg.output;
  if (uses_quadrature(e)) {
    j["quadrature"] = {{"scheme", to_string(cfg.quadrature.scheme)},
                       {"rel_tol", cfg.quadrature.rel_tol},
                       {"abs_tol", cfg.quadrature.abs_tol},
                       {"max_evals", cfg.quadrature.max_evals},
                       {"split_T", cfg.quadrature.split_T}};
  } else {
    j["monte_carlo"] = mc_json(cfg.mc);
  }
  if (e != Experiment::BoundsAudit) j["s"] = cfg.s;
  switch (e) {
    case Experiment::KernelIdentity:
      j["dims"] = cfg.dims;
      j["r"] = cfg.r;
      break;
    case Experiment::BoundsAudit:
      j["dims"] = cfg.dims;
      j["instances"] = cfg.instances;
      j["radius"] = cfg.radius;
      j["s_range"] = {cfg.s_lo, cfg.s_hi};
      break;
    case Experiment::Perimeter:
    case Experiment::Sweep:
      j["set"] = to_json(*cfg.set);
      j["domain"] = to_json(*cfg.domain);
      j["engine"] = to_string(cfg.engine);
      j["tensor"] = {{"t_min", cfg.tensor.t_min},
                     {"t_nodes", cfg.tensor.t_nodes},
                     {"t_tail", cfg.tensor.t_tail},
                     {"rel_tol", cfg.tensor.rel_tol}};
      break;
    case Experiment::CubeDensity:
      j["x0"] = cfg.x0;
      j["r"] = cfg.r;
      j["t_min_scale"] = cfg.t_min_scale;
      j["normal_axis"] = cfg.normal_axis;
      break;
    case Experiment::Isoperimetry: {
      j["dim"] = cfg.dim;
      j["m"] = cfg.m;
      json shapes = json::array();
      for (IsoShape sh : cfg.shapes) shapes.push_back(to_string(sh));
      j["shapes"] = shapes;
      break;
    }
    case Experiment::Coarea:
      j["domain"] = to_json(*cfg.domain);
      j["function"] = {{"type", cfg.function.type},
                       {"axis", cfg.function.axis},
                       {"shift", cfg.function.shift},
                       {"scale", cfg.function.scale}};
      j["levels"] = cfg.levels;
      break;
  }
  json acc = json::object();
  const AcceptanceRules& a = cfg.acceptance;
  if (a.max_relative_error) acc["max_relative_error"] = *a.max_relative_error;
  if (a.max_relative_gap) acc["max_relative_gap"] = *a.max_relative_gap;
  if (a.reference) acc["reference"] = *a.reference;
  if (a.sigma) acc["sigma"] = *a.sigma;
  if (a.max_violations) acc["max_violations"] = *a.max_violations;
  if (a.monotone) acc["monotone"] = *a.monotone;
  j["acceptance"] = acc;
  return j;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const ExperimentConfig& cfg) {
  json j = to_json(cfg);
  j.erase("output");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(j.dump())));
  return buf;
}

}  // namespace gfp::runner
