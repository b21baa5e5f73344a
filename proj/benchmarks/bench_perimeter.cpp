#include <benchmark/benchmark.h>

#include "gfp/perimeter/halfspace.hpp"
#include "gfp/perimeter/perimeter.hpp"
#include "gfp/perimeter/tensor.hpp"

namespace {

void BM_HalfspaceSemiAnalytic(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gfp::halfspace_frac_perimeter(0.5, 0.999));
}
BENCHMARK(BM_HalfspaceSemiAnalytic);

void BM_HeatMcLocal(benchmark::State& state) {
  gfp::McConfig mc;
  mc.samples = static_cast<std::uint64_t>(state.range(0));
  const auto e = gfp::SetExpr::ball({0.0, 0.0}, 1.0);
  const auto om = gfp::Domain::ball({0.0, 0.0}, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(gfp::frac_perimeter_local(e, om, 0.5, gfp::Engine::HeatMc, mc));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HeatMcLocal)->Arg(20000)->Arg(200000)->Unit(benchmark::kMillisecond);

void BM_PairCorrelation1d(benchmark::State& state) {
  const auto a = gfp::SetExpr::box({-2.0}, {0.0});
  const auto b = gfp::SetExpr::box({0.0}, {2.0});
  for (auto _ : state) benchmark::DoNotOptimize(gfp::pair_correlation(a, b, 0.01));
}
BENCHMARK(BM_PairCorrelation1d);

void BM_PairCorrelation2d(benchmark::State& state) {
  const auto om = gfp::SetExpr::ball({0.0, 0.0}, 2.0);
  const auto ball = gfp::SetExpr::ball({0.0, 0.0}, 1.0);
  const auto a = gfp::SetExpr::intersection_of(2, {ball, om});
  const auto b = gfp::SetExpr::intersection_of(2, {gfp::SetExpr::complement(ball), om});
  const double t = state.range(0) == 0 ? 1e-3 : 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(gfp::pair_correlation(a, b, t));
}
BENCHMARK(BM_PairCorrelation2d)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
