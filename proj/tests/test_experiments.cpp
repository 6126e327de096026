#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cvlab/densities.hpp"
#include "cvlab/experiments.hpp"
#include "cvlab/io.hpp"
#include "cvlab/rng.hpp"

using namespace cvlab;
using namespace cvlab::experiments;

namespace {
constexpr double kPi = std::numbers::pi;

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.n = 10;
  cfg.samples = 100;
  cfg.master_seed = 20240817;
  cfg.threads = 1;
  return cfg;
}
}  // namespace

TEST_CASE("ks statistic on exact and degenerate samples") {
  // inverse-transform draws from the saddle limit law
  rng::Stream st(5);
  std::vector<double> sample;
  sample.reserve(10000);
  for (int i = 0; i < 10000; ++i) {
    const double u = st.next_unit_open();
    sample.push_back(std::sqrt(-2.0 / (3.0 * kPi) * std::log1p(-u)));
  }
  const double d = ks_statistic(sample, densities::saddle_limit_cdf);
  CHECK(d < 0.02);
  CHECK(ks_p_value(d, 10000) > 0.001);

  // constant sample against a continuous CDF
  std::vector<double> constant(50, 0.47);
  CHECK(ks_statistic(constant, densities::saddle_limit_cdf) >= 0.5);

  std::vector<double> tiny(5, 0.1);
  CHECK_THROWS_AS(ks_statistic(tiny, densities::saddle_limit_cdf),
                  std::invalid_argument);
}

TEST_CASE("two-sample ks") {
  rng::Stream st(6);
  std::vector<double> a, b;
  for (int i = 0; i < 4000; ++i) {
    a.push_back(st.next_gaussian());
    b.push_back(st.next_gaussian());
  }
  CHECK(ks_two_sample(a, b) < 0.05);
  std::vector<double> c(1000, 0.0), d(1000, 1.0);
  CHECK(ks_two_sample(c, d) == doctest::Approx(1.0));
}

TEST_CASE("run_experiment aggregates and respects the mass identity") {
  const auto result = run_experiment(small_config());
  const auto& s = result.summary;
  CHECK(s.accepted >= 99);
  CHECK(s.identity_failures <= 1);

  // per-sample identity on the records
  std::vector<int> saddles(static_cast<std::size_t>(s.samples), 0),
      maxima(static_cast<std::size_t>(s.samples), 0);
  for (const auto& p : result.points)
    (p.index == critpoints::MorseIndex::Saddle
         ? saddles[static_cast<std::size_t>(p.sample_id)]
         : maxima[static_cast<std::size_t>(p.sample_id)])++;
  for (std::size_t i = 0; i < saddles.size(); ++i)
    if (saddles[i] + maxima[i] > 0) CHECK(saddles[i] - maxima[i] == 8);

  // histogram total mass per index = mean count / n
  auto hist_mass = [&](const IndexStats& st_idx) {
    std::int64_t total = st_idx.histogram.overflow;
    for (auto c : st_idx.histogram.counts) total += c;
    return static_cast<double>(total) / (s.accepted * double(s.n));
  };
  CHECK(hist_mass(s.saddle) == doctest::Approx(s.saddle.mass).epsilon(1e-15));
  CHECK(hist_mass(s.maxima) == doctest::Approx(s.maxima.mass).epsilon(1e-15));
  CHECK(s.saddle.mass ==
        doctest::Approx(s.saddle.count_mean / s.n).epsilon(1e-12));

  // ballpark sanity against the exact finite-n masses
  const double exact_saddle = 4.0 * 81.0 / (10.0 * 28.0);  // 4(n-1)^2/(n(3n-2))
  CHECK(std::abs(s.saddle.mass - exact_saddle / 10.0 * 10.0) < 0.15);
  CHECK(s.maxima.count_mean >= 1.0);
}

TEST_CASE("experiment summaries are byte-identical across thread counts") {
  ExperimentConfig cfg = small_config();
  cfg.samples = 60;
  cfg.threads = 1;
  const auto r1 = run_experiment(cfg);
  cfg.threads = 4;
  const auto r4 = run_experiment(cfg);
  cfg.threads = 16;
  const auto r16 = run_experiment(cfg);

  CHECK(io::summary_json(r1.summary) == io::summary_json(r4.summary));
  CHECK(io::summary_json(r1.summary) == io::summary_json(r16.summary));

  std::ostringstream p1, p4;
  io::write_points_csv(p1, r1.summary, r1.points);
  io::write_points_csv(p4, r4.summary, r4.points);
  CHECK(p1.str() == p4.str());

  ExperimentConfig other = cfg;
  other.master_seed += 1;
  const auto rother = run_experiment(other);
  CHECK(io::summary_json(r1.summary) != io::summary_json(rother.summary));
}

TEST_CASE("histogram overflow is tracked") {
  ExperimentConfig cfg = small_config();
  cfg.samples = 20;
  cfg.bins.xmax = 0.4;  // force values beyond the range into overflow
  cfg.bins.bins = 8;
  const auto result = run_experiment(cfg);
  CHECK(result.summary.saddle.histogram.overflow +
            result.summary.maxima.histogram.overflow >
        0);
  // the mass identity still holds with overflow included
  std::int64_t total = result.summary.saddle.histogram.overflow;
  for (auto c : result.summary.saddle.histogram.counts) total += c;
  CHECK(total == result.summary.saddle.total);
}

TEST_CASE("gaussian and spherical value laws agree at moderate degree") {
  ExperimentConfig cfg;
  cfg.n = 20;
  cfg.samples = 300;
  cfg.master_seed = 5150;
  const auto gauss = run_experiment(cfg);
  cfg.ensemble = Ensemble::Spherical;
  const auto sph = run_experiment(cfg);

  std::vector<double> gv, sv;
  for (const auto& p : gauss.points)
    if (p.index == critpoints::MorseIndex::Saddle) gv.push_back(p.value);
  for (const auto& p : sph.points)
    if (p.index == critpoints::MorseIndex::Saddle) sv.push_back(p.value);
  CHECK(ks_two_sample(gv, sv) < 0.05);
}

TEST_CASE("convergence study, analytic mode") {
  ExperimentConfig tmpl = small_config();
  const auto rows = convergence_study({100, 200, 400}, tmpl, false, 2);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].sup_scaled_dev > rows[1].sup_scaled_dev);
  CHECK(rows[1].sup_scaled_dev > rows[2].sup_scaled_dev);
  CHECK_FALSE(rows[0].has_mc);

  CHECK_THROWS_AS(convergence_study({100, 50}, tmpl, false, 2),
                  std::invalid_argument);
}

TEST_CASE("convergence study, MC mode") {
  ExperimentConfig tmpl;
  tmpl.samples = 400;
  tmpl.master_seed = 777123;
  const auto rows = convergence_study({15, 30}, tmpl, true, 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].has_mc);
  CHECK(std::isfinite(rows[0].sup_mc_dev));
  // the empirical histogram tracks the finite-n curve better as n grows
  CHECK(rows[1].sup_mc_dev < rows[0].sup_mc_dev);
}

TEST_CASE("thread resolution") {
  CHECK(resolve_threads(3) == 3);
  CHECK(resolve_threads(0) >= 1);
}
