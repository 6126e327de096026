#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cvlab/critpoints.hpp"
#include "cvlab/ensembles.hpp"

namespace cvlab::experiments {

struct HistogramSpec {
  int bins = 80;
  double xmax = 2.5;
};

struct Histogram {
  int bins = 0;
  double xmax = 0.0;
  std::vector<std::int64_t> counts;
  std::int64_t overflow = 0;

  double bin_width() const { return bins > 0 ? xmax / bins : 0.0; }
  double center(int i) const { return (i + 0.5) * bin_width(); }
};

struct ExperimentConfig {
  int n = 2;
  int samples = 1;
  Ensemble ensemble = Ensemble::Gaussian;
  std::uint64_t master_seed = 42;
  critpoints::FinderOptions finder;
  HistogramSpec bins;
  unsigned threads = 0;  // 0 = CVLAB_THREADS env, then hardware
};

struct IndexStats {
  std::int64_t total = 0;
  double count_mean = 0.0;
  double count_variance = 0.0;
  double mass = 0.0;          // total/(accepted * n); equals histogram mass
  double ks_vs_limit = 0.0;   // KS against the unit-normalized limit law
  Histogram histogram;
};

struct ExperimentSummary {
  int n = 0;
  int samples = 0;
  Ensemble ensemble = Ensemble::Gaussian;
  std::uint64_t master_seed = 0;
  int accepted = 0;
  int identity_failures = 0;   // finder could not certify the Morse count
  int degenerate_samples = 0;  // some Hessian in the degeneracy band
  IndexStats saddle;
  IndexStats maxima;
  double runtime_seconds = 0.0;  // never serialized; see io.hpp
};

struct PointRecord {
  std::int64_t sample_id = 0;
  critpoints::MorseIndex index = critpoints::MorseIndex::Saddle;
  double value = 0.0;
  geometry::ChartPoint location;
  double residual = 0.0;
};

struct ExperimentResult {
  ExperimentSummary summary;
  std::vector<PointRecord> points;  // accepted samples only, sample order
};

// Draw -> find -> classify over `samples` sections, in parallel, with a
// deterministic order-independent reduction: equal master seeds give
// byte-identical summaries for any worker count.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// sup |empirical CDF - cdf|; requires at least 10 values.
double ks_statistic(std::vector<double> values,
                    const std::function<double(double)>& cdf);

// Two-sample Kolmogorov-Smirnov distance.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Asymptotic Kolmogorov p-value with the Stephens small-sample correction;
// n_effective = n for one sample, n*m/(n+m) for two.
double ks_p_value(double d, double n_effective);

struct ConvergenceRow {
  int n = 0;
  // sup_x |n (D_n - D_inf)(x) - F_inf(x; chi)| on [0, 2]
  double sup_scaled_dev = 0.0;
  // sup over bins |empirical density - D_n|; NaN when MC is disabled
  double sup_mc_dev = 0.0;
  bool has_mc = false;
};

// Second-order convergence study; `tmpl` supplies samples/seed/finder for
// the MC mode.
std::vector<ConvergenceRow> convergence_study(const std::vector<int>& ns,
                                              const ExperimentConfig& tmpl,
                                              bool with_mc, int chi);

// Requested threads, CVLAB_THREADS env cap, hardware fallback.
unsigned resolve_threads(unsigned requested);

}  // namespace cvlab::experiments
