#include "cvlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "cvlab/densities.hpp"
#include "cvlab/parallel.hpp"

namespace cvlab::experiments {

namespace {

struct SampleOutcome {
  critpoints::FinderResult finder;
  bool exception = false;
};

Histogram make_histogram(const HistogramSpec& spec) {
  Histogram h;
  h.bins = spec.bins;
  h.xmax = spec.xmax;
  h.counts.assign(static_cast<std::size_t>(spec.bins), 0);
  h.overflow = 0;
  return h;
}

void deposit(Histogram& h, double x) {
  const double w = h.bin_width();
  const auto bin = static_cast<std::int64_t>(std::floor(x / w));
  if (bin >= 0 && bin < h.bins)
    ++h.counts[static_cast<std::size_t>(bin)];
  else
    ++h.overflow;
}

}  // namespace

unsigned resolve_threads(unsigned requested) {
  unsigned t = requested;
  if (t == 0) {
    if (const char* env = std::getenv("CVLAB_THREADS")) {
      const long parsed = std::strtol(env, nullptr, 10);
      if (parsed > 0) t = static_cast<unsigned>(parsed);
    }
  }
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  return t;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("run_experiment: samples >= 1");
  if (cfg.n < 2) throw std::invalid_argument("run_experiment: n >= 2");
  if (cfg.bins.bins < 1 || !(cfg.bins.xmax > 0.0))
    throw std::invalid_argument("run_experiment: bad histogram spec");

  const auto t0 = std::chrono::steady_clock::now();
  const unsigned threads = resolve_threads(cfg.threads);

  std::vector<SampleOutcome> outcomes(static_cast<std::size_t>(cfg.samples));
  parallel_for(static_cast<std::size_t>(cfg.samples), threads, [&](std::size_t i) {
    auto& slot = outcomes[i];
    try {
      const Section s = ensembles::draw_section(
          cfg.n, cfg.ensemble, cfg.master_seed, static_cast<std::int64_t>(i));
      slot.finder = critpoints::find_critical_points(s, cfg.finder);
    } catch (...) {
      slot.exception = true;
    }
  });

  // Sequential reduction in sample order: identical bytes for any thread
  // count.
  ExperimentResult result;
  auto& summary = result.summary;
  summary.n = cfg.n;
  summary.samples = cfg.samples;
  summary.ensemble = cfg.ensemble;
  summary.master_seed = cfg.master_seed;
  summary.saddle.histogram = make_histogram(cfg.bins);
  summary.maxima.histogram = make_histogram(cfg.bins);

  std::vector<double> saddle_values, max_values;
  double s_mean = 0.0, s_m2 = 0.0, m_mean = 0.0, m_m2 = 0.0;
  int accepted = 0;

  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& out = outcomes[i];
    if (out.exception || !out.finder.complete) {
      ++summary.identity_failures;
      continue;
    }
    if (out.finder.degenerate) {
      ++summary.degenerate_samples;
      continue;
    }
    ++accepted;
    summary.saddle.total += out.finder.saddles;
    summary.maxima.total += out.finder.maxima;
    // Welford over accepted samples
    const double sd = out.finder.saddles - s_mean;
    s_mean += sd / accepted;
    s_m2 += sd * (out.finder.saddles - s_mean);
    const double md = out.finder.maxima - m_mean;
    m_mean += md / accepted;
    m_m2 += md * (out.finder.maxima - m_mean);

    for (const auto& cp : out.finder.points) {
      const bool is_saddle = cp.morse_index == critpoints::MorseIndex::Saddle;
      auto& stats = is_saddle ? summary.saddle : summary.maxima;
      deposit(stats.histogram, cp.value);
      (is_saddle ? saddle_values : max_values).push_back(cp.value);
      result.points.push_back({static_cast<std::int64_t>(i), cp.morse_index,
                               cp.value, cp.location, cp.newton_residual});
    }
  }

  summary.accepted = accepted;
  if (accepted > 0) {
    summary.saddle.count_mean = s_mean;
    summary.maxima.count_mean = m_mean;
    summary.saddle.count_variance = accepted > 1 ? s_m2 / (accepted - 1) : 0.0;
    summary.maxima.count_variance = accepted > 1 ? m_m2 / (accepted - 1) : 0.0;
    const double denom = static_cast<double>(accepted) * cfg.n;
    summary.saddle.mass = static_cast<double>(summary.saddle.total) / denom;
    summary.maxima.mass = static_cast<double>(summary.maxima.total) / denom;
  }
  if (saddle_values.size() >= 10)
    summary.saddle.ks_vs_limit =
        ks_statistic(std::move(saddle_values), densities::saddle_limit_cdf);
  if (max_values.size() >= 10)
    summary.maxima.ks_vs_limit =
        ks_statistic(std::move(max_values), densities::max_limit_cdf);

  summary.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

double ks_statistic(std::vector<double> values,
                    const std::function<double(double)>& cdf) {
  if (values.size() < 10)
    throw std::invalid_argument("ks_statistic: need at least 10 values");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = cdf(values[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

double ks_p_value(double d, double n_effective) {
  const double sq = std::sqrt(n_effective);
  const double lambda = (sq + 0.12 + 0.11 / sq) * d;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

std::vector<ConvergenceRow> convergence_study(const std::vector<int>& ns,
                                              const ExperimentConfig& tmpl,
                                              bool with_mc, int chi) {
  for (std::size_t i = 1; i < ns.size(); ++i)
    if (ns[i] <= ns[i - 1])
      throw std::invalid_argument("convergence_study: ns must increase");
  std::vector<ConvergenceRow> rows;
  for (int n : ns) {
    if (n < 2) throw std::invalid_argument("convergence_study: n >= 2");
    ConvergenceRow row;
    row.n = n;
    const int grid = 401;
    double sup = 0.0;
    for (int i = 0; i < grid; ++i) {
      const double x = 2.0 * i / (grid - 1);
      const double scaled =
          n * (densities::kac_rice_finite(n, x) -
               densities::dens_total_limit(x, densities::Convention::CountForm));
      sup = std::max(sup, std::abs(scaled - densities::second_order(x, chi)));
    }
    row.sup_scaled_dev = sup;
    if (with_mc) {
      ExperimentConfig cfg = tmpl;
      cfg.n = n;
      const ExperimentResult res = run_experiment(cfg);
      const auto& sh = res.summary.saddle.histogram;
      const auto& mh = res.summary.maxima.histogram;
      const double denom = static_cast<double>(res.summary.accepted) * n *
                           sh.bin_width();
      double sup_mc = 0.0;
      for (int b = 0; b < sh.bins; ++b) {
        const double density =
            (sh.counts[static_cast<std::size_t>(b)] +
             mh.counts[static_cast<std::size_t>(b)]) /
            denom;
        sup_mc = std::max(sup_mc, std::abs(density - densities::kac_rice_finite(
                                                         n, sh.center(b))));
      }
      row.sup_mc_dev = sup_mc;
      row.has_mc = true;
    } else {
      row.sup_mc_dev = std::nan("");
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cvlab::experiments
