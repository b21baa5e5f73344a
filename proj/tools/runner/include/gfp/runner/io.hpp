#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gfp/runner/experiment.hpp"

namespace gfp::runner {

inline const std::vector<std::string> kCsvColumns{"experiment", "shape", "s",      "r",    "m",
                                                  "value",      "error", "method", "evals", "seed"};

/// RFC-4180 field: quoted when it contains a comma, quote or line break.
std::string csv_field(const std::string& text);

/// Header plus one line per row; reals in %.17g, absent optional columns empty.
std::string results_csv(const ExperimentConfig& cfg, const std::vector<Row>& rows);

/// Records of an RFC-4180 document, header included.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace gfp::runner
