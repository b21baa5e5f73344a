#include "gfp/limits/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "gfp/geometry/measure.hpp"
#include "gfp/numerics/errors.hpp"
#include "gfp/perimeter/perimeter.hpp"

namespace gfp {

namespace {

bool is_ball_like(const SetExpr& e) {
  const auto& v = e.node().value;
  if (std::holds_alternative<Ball>(v)) return true;
  if (const auto* c = std::get_if<Complement>(&v)) return is_ball_like(c->child);
  return false;
}

}  // namespace

LinearFit fit_linear_in_gap(const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw DomainError("fit_linear_in_gap: no rows");
  const double n = static_cast<double>(rows.size());
  double xm = 0.0, ym = 0.0;
  for (const auto& r : rows) {
    xm += (1.0 - r.s) / n;
    ym += r.scaled / n;
  }
  double sxx = 0.0, sxy = 0.0;
  for (const auto& r : rows) {
    const double dx = (1.0 - r.s) - xm;
    sxx += dx * dx;
    sxy += dx * (r.scaled - ym);
  }
  LinearFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = ym - fit.slope * xm;
  for (const auto& r : rows) {
    const double a = 1.0 / n - (sxx > 0.0 ? xm * ((1.0 - r.s) - xm) / sxx : 0.0);
    fit.intercept_error += std::abs(a) * r.error;
  }
  return fit;
}

SweepResult gamma_limit_sweep(const SetExpr& e, const Domain& omega, std::vector<double> s_list, Engine engine,
                              const McConfig& mc, const TensorConfig& tensor) {
  if (s_list.empty()) throw DomainError("gamma_limit_sweep: empty s list");
  std::sort(s_list.begin(), s_list.end());
  s_list.erase(std::unique(s_list.begin(), s_list.end()), s_list.end());
  if (s_list.front() <= 0.0 || s_list.back() >= 1.0) throw DomainError("fractional order s must lie in (0, 1)");
  if (s_list.back() < 0.99) throw DomainError("gamma_limit_sweep: the largest order must be at least 0.99");

  SweepResult out;
  out.reference = kGammaLimitConstant * gaussian_perimeter(e, omega).value;
  out.exploratory = !(is_polyhedral(e) || is_ball_like(e));

  const auto parts = frac_perimeter_sweep(e, omega, s_list, engine, mc, tensor);
  for (const auto& p : parts) {
    SweepRow row;
    row.s = p.s;
    row.perimeter = p.total;
    row.scaled = (1.0 - p.s) * p.total.value;
    row.error = (1.0 - p.s) * p.total.error;
    out.rows.push_back(row);
  }
  const LinearFit fit = fit_linear_in_gap(out.rows);
  out.extrapolated = fit.intercept;
  out.extrapolated_error = fit.intercept_error;
  out.slope = fit.slope;
  out.relative_gap = out.reference > 0.0 ? std::abs(out.extrapolated - out.reference) / out.reference
                                         : std::abs(out.extrapolated);
  return out;
}

}  // namespace gfp
