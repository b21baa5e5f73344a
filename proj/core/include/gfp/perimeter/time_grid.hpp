#pragma once

#include <vector>

namespace gfp {

/// Linear functional approximating int_0^inf t^{-sigma/2-1} J(t) dt as
///   sum_k node[k] J(t_k) + limit * J(inf).
struct SubordinationWeights {
  double sigma = 0.0;
  std::vector<double> node;
  double limit = 0.0;

  double apply(const std::vector<double>& j, double j_inf) const;
};

/// Log-spaced grid on [t_min, t_max].
///
/// Between the nodes g(u) = J(e^u) / e^{beta u} is interpolated by local cubics
/// in u = log t and integrated against e^{(beta - sigma/2) u} exactly up to
/// Gauss-Legendre rounding. Below t_min the head model J = kappa t^beta is
/// fitted on the two smallest nodes (or J = kappa t^beta + lambda t^{2 beta}
/// with `two_term_head`). Above t_max J is replaced by J(inf).
class LogTimeGrid {
 public:
  LogTimeGrid(double t_min, double t_max, int nodes);

  const std::vector<double>& times() const { return times_; }
  int size() const { return static_cast<int>(times_.size()); }

  /// Throws DomainError when beta - sigma/2 <= 0 (head not integrable).
  SubordinationWeights weights(double sigma, double beta, bool two_term_head = false) const;

  /// Same functional using every other node (requires an odd node count);
  /// the returned weights are laid out on the full grid with zeros in between.
  SubordinationWeights coarse_weights(double sigma, double beta, bool two_term_head = false) const;

 private:
  SubordinationWeights build(const std::vector<int>& idx, double sigma, double beta, bool two_term) const;

  std::vector<double> times_;
  double t_min_;
  double t_max_;
};

}  // namespace gfp
