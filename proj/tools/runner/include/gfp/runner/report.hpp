#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gfp::runner {

struct Series {
  std::string file;   ///< data file name, e.g. "sweep.dat"
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct Figure {
  std::string name;  ///< svg file stem
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

/// Figures of a completed run: ((1-s), scaled) for sweeps, (r, normalized)
/// per x0 for cube densities, (m, deficit) per shape and order for
/// isoperimetry, (s, value) for perimeters. Throws ReportError when the
/// manifest or results are missing.
std::vector<Figure> build_figures(const std::filesystem::path& run_dir);

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two-column .dat files and one SVG per figure under run_dir/plots.
/// Returns the written paths.
std::vector<std::filesystem::path> write_report(const std::filesystem::path& run_dir);

std::string render_svg(const Figure& fig);

}  // namespace gfp::runner
