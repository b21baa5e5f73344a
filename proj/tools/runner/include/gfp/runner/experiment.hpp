#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gfp/runner/config.hpp"

namespace gfp::runner {

/// One (s, r, shape) cell of the results table.
struct Row {
  std::string shape;
  std::optional<double> s;
  std::optional<double> r;
  std::optional<double> m;
  double value = 0.0;
  double error = 0.0;
  std::string method;
  std::uint64_t evals = 0;
  json extra = json::object();  ///< summary-only fields, not part of the CSV
};

json to_json(const Row& row);
Row row_from_json(const json& j);

struct AcceptanceOutcome {
  std::string rule;
  double threshold = 0.0;
  double observed = 0.0;
  bool pass = false;
};

struct RunResult {
  std::vector<Row> rows;
  json results = json::object();  ///< per-unit summary fragments
  std::vector<AcceptanceOutcome> acceptance;
  std::map<std::string, std::uint64_t> evals;  ///< by operation, freshly computed units only
  std::size_t cache_hits = 0;
  json cache = json::object();  ///< unit key -> {rows, summary}
  bool passed() const;
};

/// Executes the experiment. Units whose key appears in `cached` (an object
/// from a previous run with the same config hash) are reused verbatim.
/// Throws NonConvergence, DomainError or UnsupportedShape from the engines.
RunResult run_experiment(const ExperimentConfig& cfg, const json& cached = json::object());

}  // namespace gfp::runner
