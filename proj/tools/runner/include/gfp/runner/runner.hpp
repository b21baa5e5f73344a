#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gfp/runner/experiment.hpp"

namespace gfp::runner {

std::string_view artifact_version();

struct RunManifest {
  std::string config_hash;
  std::string version;
  double wall_time_seconds = 0.0;
  std::map<std::string, std::uint64_t> evals;
  std::size_t cache_hits = 0;
  std::vector<std::string> files;
};

/// Output directory of a config: `override_dir` when non-empty, otherwise
/// cfg.output, with relative paths taken from GFP_OUTPUT_ROOT (default: the
/// working directory).
std::filesystem::path resolve_output(const ExperimentConfig& cfg, const std::string& override_dir = {});

/// results.csv, summary.json and cache.json, then manifest.json last. Rows
/// cached under the same config hash in `dir` are reused.
RunManifest run_to_directory(const ExperimentConfig& cfg, const std::filesystem::path& dir);

/// Summary document: resolved config, hash, per-unit results, acceptance.
json summary_json(const ExperimentConfig& cfg, const RunResult& result);

/// Accepts either an experiment config or a summary.json, whose embedded
/// config is used.
ExperimentConfig load_any_config(const std::string& path);

}  // namespace gfp::runner
