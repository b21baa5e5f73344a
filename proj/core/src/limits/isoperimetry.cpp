#include "gfp/limits/isoperimetry.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "gfp/geometry/domain.hpp"
#include "gfp/numerics/errors.hpp"
#include "gfp/numerics/special.hpp"
#include "gfp/perimeter/halfspace.hpp"
#include "gfp/perimeter/perimeter.hpp"

namespace gfp {

namespace {

// Root of an increasing function on [lo, hi].
double bisect(const std::function<double(double)>& f, double lo, double hi) {
  if (!(f(lo) <= 0.0 && f(hi) >= 0.0)) throw NonConvergence("measure matching: root not bracketed", Estimate{lo, hi - lo, 0, "bisection"});
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(IsoShape shape) {
  switch (shape) {
    case IsoShape::Halfspace:
      return "halfspace";
    case IsoShape::Ball:
      return "ball";
    case IsoShape::Box:
      return "box";
  }
  return "unknown";
}

IsoShape iso_shape_from_string(std::string_view name) {
  if (name == "halfspace") return IsoShape::Halfspace;
  if (name == "ball") return IsoShape::Ball;
  if (name == "box") return IsoShape::Box;
  throw DomainError("unknown shape '" + std::string(name) + "'");
}

MatchedShape match_measure(IsoShape shape, int dim, double m) {
  if (!(m > 0.0 && m < 1.0)) throw DomainError("match_measure: m must lie in (0, 1)");
  if (dim < 1) throw DomainError("match_measure: dimension must be positive");
  switch (shape) {
    case IsoShape::Halfspace: {
      const double a = normal_quantile(m);
      return {SetExpr::axis_halfspace(dim, 0, a), a};
    }
    case IsoShape::Ball: {
      const double r = bisect([&](double x) { return chi_square_cdf(x * x, dim) - m; }, 0.0, 40.0);
      return {SetExpr::ball(Point(dim, 0.0), r), r};
    }
    case IsoShape::Box: {
      const double c =
          bisect([&](double x) { return std::pow(1.0 - 2.0 * normal_sf(x), dim) - m; }, 0.0, 40.0);
      return {SetExpr::box(Point(dim, -c), Point(dim, c)), c};
    }
  }
  throw DomainError("unknown shape");
}

std::vector<IsoRow> isoperimetric_scan(const std::vector<double>& s_list, const std::vector<double>& m_list,
                                       const std::vector<IsoShape>& shapes, int dim, const McConfig& mc) {
  std::vector<IsoRow> rows;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    for (std::size_t j = 0; j < m_list.size(); ++j) {
      McConfig cfg = mc;
      cfg.stream = mc.stream.substream(i * 1000 + j);
      std::vector<IsoRow> cell(s_list.size());
      for (std::size_t k = 0; k < s_list.size(); ++k) {
        cell[k].shape = shapes[i];
        cell[k].m = m_list[j];
        cell[k].s = s_list[k];
      }
      try {
        const MatchedShape ms = match_measure(shapes[i], dim, m_list[j]);
        const auto parts = frac_perimeter_sweep(ms.set, Domain::whole(dim), s_list, Engine::HeatMc, cfg);
        for (std::size_t k = 0; k < s_list.size(); ++k) {
          IsoRow& row = cell[k];
          row.parameter = ms.parameter;
          row.perimeter = parts[k].total;
          row.isoperimetric = isoperimetric_function(m_list[j], s_list[k]);
          row.deficit.value = row.perimeter.value - row.isoperimetric.value;
          row.deficit.error = combined_error(row.perimeter, row.isoperimetric);
          row.deficit.evals = row.perimeter.evals + row.isoperimetric.evals;
          row.deficit.method = row.perimeter.method;
        }
      } catch (const std::exception& ex) {
        for (auto& row : cell) row.status = ex.what();
      }
      rows.insert(rows.end(), cell.begin(), cell.end());
    }
  }
  return rows;
}

}  // namespace gfp
