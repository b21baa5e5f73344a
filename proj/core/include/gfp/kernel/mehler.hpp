#pragma once

#include "gfp/kernel/point.hpp"

namespace gfp {

/// Mehler kernel M_t(x, y), the transition density of the Ornstein-Uhlenbeck
/// semigroup with respect to the standard Gaussian measure.
///
/// Evaluated in log space with 1 - e^{-2t} computed by expm1, so it stays
/// accurate for t far below 1e-8. Throws DomainError for t <= 0 or
/// mismatched dimensions.
double mehler(double t, PointView x, PointView y);

/// log M_t(x, y); finite wherever mehler() does not underflow.
double log_mehler(double t, PointView x, PointView y);

/// Same quantity from the invariants |x|^2 + |y|^2 and |x - y|^2.
double log_mehler_from_norms(double t, double sum_sq, double dist_sq, int dim);

/// Gauss-Weierstrass (heat) kernel (4 pi t)^{-N/2} exp(-r^2 / (4t)).
double gauss_weierstrass(double t, double r, int dim);

/// M_t(x, y) / H_t(|x - y|). Tends to (2 pi)^{N/2} e^{|x|^2/4} e^{|y|^2/4}
/// as t -> 0 but not uniformly in t.
double kernel_ratio_check(PointView x, PointView y, double t);

/// The small-time limit of kernel_ratio_check.
double kernel_ratio_limit(PointView x, PointView y);

}  // namespace gfp
