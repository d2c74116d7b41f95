#include <benchmark/benchmark.h>

#include <random>

#include "slag/chart.hpp"
#include "slag/extension.hpp"
#include "slag/oracles.hpp"

namespace {

slag::TaylorPoly random_f0(int D) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  slag::TaylorPoly f0(D);
  for (int d = 3; d <= D; ++d) f0[d] = u(rng) * std::ldexp(1.0, -(d - 3));
  return f0;
}

void BM_ExtendSeries(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const slag::TaylorPoly f0 = random_f0(2 * K + 4);
  for (auto _ : state) benchmark::DoNotOptimize(slag::extend_series(f0, 3, K));
}
BENCHMARK(BM_ExtendSeries)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

void BM_ExtendSeriesQuad(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const auto f0 = random_f0(2 * K + 4).cast<slag::Quad>();
  for (auto _ : state) benchmark::DoNotOptimize(slag::extend_series(f0, 3, K));
}
BENCHMARK(BM_ExtendSeriesQuad)->Arg(4)->Arg(8);

void BM_PdeResidual(benchmark::State& state) {
  const slag::SigmaExpansion phi = slag::extend_series(random_f0(24), 2, 8);
  const slag::ResidualGrid grid = slag::ResidualGrid::box(0.05);
  for (auto _ : state) benchmark::DoNotOptimize(slag::pde_residual(phi, grid));
}
BENCHMARK(BM_PdeResidual);

void BM_CircleAtlas(benchmark::State& state) {
  const slag::ArcSpec arc = slag::unit_circle_arc(24);
  for (auto _ : state) benchmark::DoNotOptimize(slag::build_atlas(arc, 2, 0, 0.5, 8));
}
BENCHMARK(BM_CircleAtlas);

}  // namespace

BENCHMARK_MAIN();
