#include <benchmark/benchmark.h>

#include "cvlab/critpoints.hpp"
#include "cvlab/ensembles.hpp"

using namespace cvlab;

static void BM_FindCriticalPoints(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::int64_t sample = 0;
  std::int64_t points = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const Section s =
        ensembles::draw_section(n, Ensemble::Gaussian, 1234, sample++);
    state.ResumeTiming();
    const auto result = critpoints::find_critical_points(s);
    points += static_cast<std::int64_t>(result.points.size());
    benchmark::DoNotOptimize(result);
  }
  state.counters["points/sample"] =
      benchmark::Counter(static_cast<double>(points) / state.iterations());
}
BENCHMARK(BM_FindCriticalPoints)->Arg(10)->Arg(20)->Arg(40)->Arg(80)
    ->Unit(benchmark::kMillisecond);

static void BM_AlgebraicOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::int64_t sample = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const Section s =
        ensembles::draw_section(n, Ensemble::Gaussian, 99, sample++);
    state.ResumeTiming();
    benchmark::DoNotOptimize(critpoints::algebraic_oracle_robust(s));
  }
}
BENCHMARK(BM_AlgebraicOracle)->Arg(4)->Arg(6)->Arg(8)
    ->Unit(benchmark::kMicrosecond);

static void BM_GradientField(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Section s = ensembles::draw_section(n, Ensemble::Gaussian, 5, 0);
  const std::complex<double> z{0.4, -0.3};
  for (auto _ : state) benchmark::DoNotOptimize(critpoints::gradient_field(s, z));
}
BENCHMARK(BM_GradientField)->Arg(20)->Arg(100);
