#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gfp/geometry/set_expr.hpp"
#include "gfp/numerics/estimate.hpp"
#include "gfp/perimeter/config.hpp"

namespace gfp {

enum class IsoShape { Halfspace, Ball, Box };

std::string_view to_string(IsoShape shape);
IsoShape iso_shape_from_string(std::string_view name);

/// Origin-centred representative of the shape family with Gaussian measure m:
/// {x_1 < Phi^{-1}(m)}, Ball(0, R) with P(chi^2_N < R^2) = m by bisection, or
/// the cube (-c, c)^N with (1 - 2 Phi(-c))^N = m by bisection.
struct MatchedShape {
  SetExpr set;
  double parameter = 0.0;  ///< offset, radius or half side
};
MatchedShape match_measure(IsoShape shape, int dim, double m);

struct IsoRow {
  IsoShape shape = IsoShape::Halfspace;
  double m = 0.0;
  double s = 0.0;
  double parameter = 0.0;
  Estimate perimeter;
  Estimate isoperimetric;
  Estimate deficit;  ///< perimeter - isoperimetric
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

/// Deficits P_s^gamma(E) - I_s(m) with heat-mc in the whole space. Every
/// (shape, m) cell uses its own substream; all orders share its samples.
/// Failures are recorded in the row status instead of being thrown.
std::vector<IsoRow> isoperimetric_scan(const std::vector<double>& s_list, const std::vector<double>& m_list,
                                       const std::vector<IsoShape>& shapes, int dim, const McConfig& mc = {});

}  // namespace gfp
