#include <benchmark/benchmark.h>

#include "cvlab/ensembles.hpp"
#include "cvlab/geometry.hpp"

using namespace cvlab;

static void BM_SampleGaussian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  rng::Stream stream(17);
  for (auto _ : state)
    benchmark::DoNotOptimize(ensembles::sample_gaussian(n, stream));
}
BENCHMARK(BM_SampleGaussian)->Arg(40)->Arg(400);

static void BM_HermitianValue(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Section s = ensembles::draw_section(n, Ensemble::Gaussian, 3, 0);
  const geometry::ChartPoint p{geometry::Chart::Z, {0.62, -0.11}};
  for (auto _ : state)
    benchmark::DoNotOptimize(geometry::hermitian_value(s, p));
}
BENCHMARK(BM_HermitianValue)->Arg(40)->Arg(400);

static void BM_Su2Rotate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Section s = ensembles::draw_section(n, Ensemble::Gaussian, 4, 0);
  rng::Stream stream(5);
  std::complex<double> alpha, beta;
  ensembles::random_su2(stream, alpha, beta);
  for (auto _ : state)
    benchmark::DoNotOptimize(ensembles::su2_rotate(s, alpha, beta));
}
BENCHMARK(BM_Su2Rotate)->Arg(8)->Arg(40);
