#include "gfp/runner/runner.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>

#include "gfp/numerics/monte_carlo.hpp"
#include "gfp/runner/io.hpp"

#ifndef GFP_VERSION
#define GFP_VERSION "0.0.0"
#endif

namespace gfp::runner {

namespace fs = std::filesystem;

std::string_view artifact_version() { return GFP_VERSION; }

fs::path resolve_output(const ExperimentConfig& cfg, const std::string& override_dir) {
  fs::path p = override_dir.empty() ? fs::path(cfg.output) : fs::path(override_dir);
  if (p.is_absolute()) return p;
  if (const char* root = std::getenv("GFP_OUTPUT_ROOT"); root && *root) return fs::path(root) / p;
  return p;
}

json summary_json(const ExperimentConfig& cfg, const RunResult& result) {
  json acceptance = json::array();
  for (const auto& a : result.acceptance) {
    acceptance.push_back({{"rule", a.rule},
                          {"threshold", a.threshold},
                          {"observed", std::isfinite(a.observed) ? json(a.observed) : json(nullptr)},
                          {"pass", a.pass}});
  }
  json rows = json::array();
  for (const auto& r : result.rows) rows.push_back(to_json(r));
  return {{"experiment", to_string(cfg.experiment)},
          {"config", to_json(cfg)},
          {"config_hash", config_hash(cfg)},
          {"version", artifact_version()},
          {"results", result.results},
          {"rows", rows},
          {"acceptance", acceptance},
          {"passed", result.passed()}};
}

ExperimentConfig load_any_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("config") && j.contains("config_hash")) return parse_config(j.at("config"));
  return parse_config(j);
}

RunManifest run_to_directory(const ExperimentConfig& cfg, const fs::path& dir) {
  const auto start = std::chrono::steady_clock::now();
  const std::string hash = config_hash(cfg);

  json cached = json::object();
  const fs::path cache_path = dir / "cache.json";
  if (fs::exists(cache_path)) {
    try {
      const json c = json::parse(read_file(cache_path));
      if (c.value("config_hash", "") == hash) cached = c.at("units");
    } catch (const std::exception&) {
      cached = json::object();  // unreadable cache is ignored
    }
  }

  const RunResult result = run_experiment(cfg, cached);

  fs::create_directories(dir);
  RunManifest manifest;
  manifest.config_hash = hash;
  manifest.version = std::string(artifact_version());
  manifest.evals = result.evals;
  manifest.cache_hits = result.cache_hits;
  manifest.files = {"results.csv", "summary.json", "cache.json"};

  write_atomic(dir / "results.csv", results_csv(cfg, result.rows));
  write_atomic(dir / "summary.json", summary_json(cfg, result).dump(2) + "\n");
  write_atomic(cache_path, json{{"config_hash", hash}, {"units", result.cache}}.dump() + "\n");

  manifest.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const json m = {{"config_hash", manifest.config_hash},
                  {"version", manifest.version},
                  {"experiment", to_string(cfg.experiment)},
                  {"wall_time_seconds", manifest.wall_time_seconds},
                  {"workers", default_workers()},
                  {"evals", manifest.evals},
                  {"cache_hits", manifest.cache_hits},
                  {"files", manifest.files}};
  write_atomic(dir / "manifest.json", m.dump(2) + "\n");
  return manifest;
}

}  // namespace gfp::runner
