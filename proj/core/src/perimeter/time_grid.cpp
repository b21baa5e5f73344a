#include "gfp/perimeter/time_grid.hpp"

#include <algorithm>
#include <cmath>

#include "gfp/numerics/errors.hpp"
#include "gfp/numerics/quadrature.hpp"

namespace gfp {

double SubordinationWeights::apply(const std::vector<double>& j, double j_inf) const {
  if (j.size() != node.size()) throw DomainError("SubordinationWeights: size mismatch");
  double acc = limit * j_inf;
  for (std::size_t k = 0; k < j.size(); ++k) acc += node[k] * j[k];
  return acc;
}

LogTimeGrid::LogTimeGrid(double t_min, double t_max, int nodes) : t_min_(t_min), t_max_(t_max) {
  if (!(t_min > 0.0) || !(t_max > t_min) || !std::isfinite(t_max))
    throw DomainError("LogTimeGrid: need 0 < t_min < t_max < inf");
  if (nodes < 4) throw DomainError("LogTimeGrid: at least 4 nodes");
  const double u0 = std::log(t_min);
  const double u1 = std::log(t_max);
  times_.resize(static_cast<std::size_t>(nodes));
  for (int k = 0; k < nodes; ++k) times_[k] = std::exp(u0 + (u1 - u0) * k / (nodes - 1));
  times_.front() = t_min;
  times_.back() = t_max;
}

SubordinationWeights LogTimeGrid::weights(double sigma, double beta, bool two_term_head) const {
  std::vector<int> idx(times_.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<int>(k);
  return build(idx, sigma, beta, two_term_head);
}

SubordinationWeights LogTimeGrid::coarse_weights(double sigma, double beta, bool two_term_head) const {
  if (times_.size() % 2 == 0) throw DomainError("LogTimeGrid: coarse weights need an odd node count");
  std::vector<int> idx;
  for (std::size_t k = 0; k < times_.size(); k += 2) idx.push_back(static_cast<int>(k));
  if (idx.size() < 4) throw DomainError("LogTimeGrid: coarse grid needs at least 4 nodes");
  return build(idx, sigma, beta, two_term_head);
}

SubordinationWeights LogTimeGrid::build(const std::vector<int>& idx, double sigma, double beta,
                                        bool two_term) const {
  if (!(sigma > 0.0)) throw DomainError("subordination order must be positive");
  const double c = beta - 0.5 * sigma;
  if (!(c > 0.0)) throw DomainError("head model t^beta is not integrable against t^{-sigma/2-1}");

  const int m = static_cast<int>(idx.size());
  std::vector<double> u(m);
  for (int k = 0; k < m; ++k) u[k] = std::log(times_[idx[k]]);

  // Weights on g_k = J_k / t_k^beta.
  std::vector<double> wg(m, 0.0);
  const QuadratureRule& gl = gauss_legendre(8);
  for (int p = 0; p + 1 < m; ++p) {
    const int j0 = std::clamp(p - 1, 0, m - 4);
    const double a = u[p];
    const double b = u[p + 1];
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double x = mid + half * gl.nodes[q];
      const double base = half * gl.weights[q] * std::exp(c * x);
      for (int i = 0; i < 4; ++i) {
        double li = 1.0;
        for (int l = 0; l < 4; ++l)
          if (l != i) li *= (x - u[j0 + l]) / (u[j0 + i] - u[j0 + l]);
        wg[j0 + i] += base * li;
      }
    }
  }

  SubordinationWeights out;
  out.sigma = sigma;
  out.node.assign(times_.size(), 0.0);
  for (int k = 0; k < m; ++k) out.node[idx[k]] = wg[k] / std::pow(times_[idx[k]], beta);

  const double t0 = times_[idx[0]];
  const double t1 = times_[idx[1]];
  const double h0 = std::pow(t0, c) / c;
  const double p0 = std::pow(t0, beta);
  const double p1 = std::pow(t1, beta);
  if (!two_term) {
    const double den = p0 * p0 + p1 * p1;
    out.node[idx[0]] += h0 * p0 / den;
    out.node[idx[1]] += h0 * p1 / den;
  } else {
    // J = kappa t^beta + lambda t^{2 beta} through the two smallest nodes.
    const double h1 = std::pow(t0, c + beta) / (c + beta);
    const double det = p0 * p1 * p1 - p0 * p0 * p1;
    out.node[idx[0]] += (h0 * p1 * p1 - h1 * p1) / det;
    out.node[idx[1]] += (-h0 * p0 * p0 + h1 * p0) / det;
  }
  out.limit = (2.0 / sigma) * std::pow(t_max_, -0.5 * sigma);
  return out;
}

}  // namespace gfp
