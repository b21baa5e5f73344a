#include "gfp/perimeter/heat_mc.hpp"

#include <cmath>

#include "gfp/numerics/errors.hpp"
#include "gfp/numerics/special.hpp"

namespace gfp {

VectorMean run_heat_mc(const HeatMcProblem& problem, const LogTimeGrid& grid, std::uint64_t samples,
                       const RngStream& stream) {
  const int n = problem.dim;
  const int nf = problem.features;
  const int ns = problem.scores;
  const int nw = static_cast<int>(problem.weights.size());
  const int nk = grid.size();
  if (n < 1 || nf < 1 || ns < 1 || nw < 1 || !problem.feature || !problem.score)
    throw DomainError("run_heat_mc: incomplete problem");
  for (const auto& w : problem.weights)
    if (static_cast<int>(w.node.size()) != nk) throw DomainError("run_heat_mc: weights do not match grid");

  std::vector<double> rho(nk), sig(nk);
  for (int k = 0; k < nk; ++k) {
    const double t = grid.times()[k];
    rho[k] = std::exp(-t);
    sig[k] = std::sqrt(-std::expm1(-2.0 * t));
  }

  double box_mass = 1.0;
  if (problem.proposal) {
    const auto& bb = *problem.proposal;
    if (static_cast<int>(bb.lo.size()) != n || static_cast<int>(bb.hi.size()) != n)
      throw DomainError("run_heat_mc: proposal dimension mismatch");
    for (int i = 0; i < n; ++i) box_mass *= normal_interval_mass(bb.lo[i], bb.hi[i]);
  }

  const auto sampler = [&](RandomSource& rng, std::span<double> out) {
    thread_local std::vector<double> buf;
    buf.resize(static_cast<std::size_t>(3 * n + 3 * nf + 2 * ns));
    double* x = buf.data();
    double* z = x + n;
    double* y = z + n;
    double* fx = y + n;
    double* fy = fx + nf;
    double* fz = fy + nf;
    double* sc = fz + nf;
    double* si = sc + ns;

    for (int i = 0; i < n; ++i)
      x[i] = problem.proposal ? rng.truncated_normal(problem.proposal->lo[i], problem.proposal->hi[i])
                              : rng.normal();
    for (int i = 0; i < n; ++i) z[i] = rng.normal();

    std::fill(out.begin(), out.end(), 0.0);
    problem.feature(PointView(x, n), std::span<double>(fx, nf));
    if (problem.active && !problem.active(std::span<const double>(fx, nf))) return;

    problem.feature(PointView(z, n), std::span<double>(fz, nf));
    problem.score(std::span<const double>(fx, nf), std::span<const double>(fz, nf), std::span<double>(si, ns));
    for (int j = 0; j < nw; ++j)
      for (int i = 0; i < ns; ++i) out[j * ns + i] = problem.weights[j].limit * si[i];

    for (int k = 0; k < nk; ++k) {
      for (int i = 0; i < n; ++i) y[i] = rho[k] * x[i] + sig[k] * z[i];
      problem.feature(PointView(y, n), std::span<double>(fy, nf));
      problem.score(std::span<const double>(fx, nf), std::span<const double>(fy, nf), std::span<double>(sc, ns));
      bool any = false;
      for (int i = 0; i < ns; ++i) any = any || sc[i] != 0.0;
      if (!any) continue;
      for (int j = 0; j < nw; ++j) {
        const double w = problem.weights[j].node[k];
        for (int i = 0; i < ns; ++i) out[j * ns + i] += w * sc[i];
      }
    }
    for (auto& v : out) v *= box_mass;
  };

  return mc_mean_vector(sampler, static_cast<std::size_t>(nw * ns), samples, stream);
}

}  // namespace gfp
