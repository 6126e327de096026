#include <benchmark/benchmark.h>

#include "cvlab/densities.hpp"

using namespace cvlab::densities;

static void BM_KacRiceClosedForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double x = 0.0;
  for (auto _ : state) {
    x += 1e-4;
    if (x > 2.5) x = 1e-4;
    benchmark::DoNotOptimize(kac_rice_finite(n, x));
  }
}
BENCHMARK(BM_KacRiceClosedForm)->Arg(40)->Arg(400);

static void BM_KacRiceAdaptive(benchmark::State& state) {
  QuadratureSpec quad;
  quad.method = QuadMethod::AdaptiveRadial;
  double x = 0.0;
  for (auto _ : state) {
    x += 0.01;
    if (x > 2.5) x = 0.01;
    benchmark::DoNotOptimize(kac_rice_finite(40, x, quad));
  }
}
BENCHMARK(BM_KacRiceAdaptive)->Unit(benchmark::kMicrosecond);

static void BM_SampleCurve(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_curve(CurveKind::TotalLimit,
                                          Convention::CountForm, 0, 2, 2.5,
                                          static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_SampleCurve)->Arg(400)->Arg(4000)->Unit(benchmark::kMicrosecond);
