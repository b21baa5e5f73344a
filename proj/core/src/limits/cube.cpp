#include "gfp/limits/cube.hpp"

#include <cmath>
#include <numbers>

#include "gfp/geometry/domain.hpp"
#include "gfp/numerics/errors.hpp"
#include "gfp/perimeter/perimeter.hpp"

namespace gfp {

void CubeExperiment::validate() const {
  if (x0.empty()) throw DomainError("CubeExperiment: x0 is empty");
  const int n = static_cast<int>(x0.size());
  if (normal_axis >= n || normal_axis < -1) throw DomainError("CubeExperiment: normal_axis out of range");
  if (r_list.empty() || s_list.empty()) throw DomainError("CubeExperiment: empty r or s list");
  for (double r : r_list)
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("CubeExperiment: r must be positive");
  for (double s : s_list)
    if (!(s > 0.0 && s < 1.0)) throw DomainError("fractional order s must lie in (0, 1)");
  if (!(t_min_scale > 0.0)) throw DomainError("CubeExperiment: t_min_scale must be positive");
}

CubeResult cube_density(const CubeExperiment& exp, const McConfig& mc) {
  exp.validate();
  const int n = static_cast<int>(exp.x0.size());
  const int axis = exp.normal_axis < 0 ? n - 1 : exp.normal_axis;
  const double pi = std::numbers::pi;
  const double decay = std::exp(-0.5 * squared_norm(exp.x0));
  const double target = std::pow(2.0, -0.5 * (n - 2)) * std::pow(pi, -0.5 * (n + 1)) * decay;
  const double face_density = std::pow(2.0 * pi, -0.5 * (n - 1)) * decay;
  const SetExpr lower = SetExpr::axis_halfspace(n, axis, exp.x0[axis]);

  CubeResult out;
  out.calibrated_C = -kInf;
  for (std::size_t i = 0; i < exp.r_list.size(); ++i) {
    const double r = exp.r_list[i];
    Point lo = exp.x0, hi = exp.x0;
    for (int k = 0; k < n; ++k) {
      lo[k] -= 0.5 * r;
      hi[k] += 0.5 * r;
    }
    McConfig cfg = mc;
    cfg.t_min = exp.t_min_scale * r * r;
    cfg.stream = mc.stream.substream(i);
    const auto local = frac_perimeter_local_sweep(lower, Domain::box(lo, hi), exp.s_list, Engine::HeatMc, cfg);
    const double scale = std::pow(r, -(n - 1));
    for (std::size_t j = 0; j < exp.s_list.size(); ++j) {
      const double s = exp.s_list[j];
      CubeRow row;
      row.r = r;
      row.s = s;
      row.normalized = local[j];
      row.normalized.value *= scale * (1.0 - s);
      row.normalized.error *= scale * (1.0 - s);
      row.target = target;
      row.upper_bound = decay / (s * std::pow(2.0, 0.5 * (n - 1 - s)) * std::pow(pi, 0.5 * (n + 1)));
      row.limit_ratio = row.normalized.value / face_density;
      out.calibrated_C = std::max(out.calibrated_C, (row.normalized.value / row.upper_bound - 1.0) / r);
      out.rows.push_back(row);
    }
  }
  return out;
}

}  // namespace gfp
