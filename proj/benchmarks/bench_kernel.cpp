#include <benchmark/benchmark.h>

#include "gfp/kernel/mehler.hpp"
#include "gfp/kernel/subordinated.hpp"
#include "gfp/numerics/special.hpp"

namespace {

void BM_Mehler(benchmark::State& state) {
  const gfp::Point x{0.3, -0.2, 0.5}, y{0.1, 0.4, -0.7};
  double t = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gfp::mehler(t, x, y));
    t = t < 1.0 ? t * 1.01 : 1e-3;
  }
}
BENCHMARK(BM_Mehler);

void BM_KSigma(benchmark::State& state) {
  gfp::QuadratureSpec spec;
  spec.rel_tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  const gfp::Point x{0.0, 0.0}, y{1.0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(gfp::k_sigma(x, y, 0.5, spec));
}
BENCHMARK(BM_KSigma)->Arg(6)->Arg(10);

void BM_KTilde(benchmark::State& state) {
  const gfp::QuadratureSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(gfp::k_tilde(1.0, 0.5, 2, spec));
}
BENCHMARK(BM_KTilde);

void BM_OrthantProbability(benchmark::State& state) {
  double rho = -0.9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gfp::orthant_prob(0.3, rho));
    rho = rho < 0.9 ? rho + 0.001 : -0.9;
  }
}
BENCHMARK(BM_OrthantProbability);

}  // namespace
