#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "cvlab/ensembles.hpp"
#include "cvlab/experiments.hpp"
#include "cvlab/geometry.hpp"
#include "test_util.hpp"

using namespace cvlab;
using namespace cvlab::ensembles;
using std::complex;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("orthonormal basis weights") {
  const auto b1 = orthonormal_basis_weights(1);
  CHECK(b1.size() == 2);
  CHECK(b1[0] == doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-13));
  CHECK(b1[1] == doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-13));

  const auto b2 = orthonormal_basis_weights(2);
  CHECK(b2[1] == doctest::Approx(std::sqrt(6.0 / kPi)).epsilon(1e-13));

  // symmetric weights, exactly
  const auto b31 = orthonormal_basis_weights(31);
  for (int j = 0; j <= 31; ++j)
    CHECK(b31[static_cast<std::size_t>(j)] ==
          b31[static_cast<std::size_t>(31 - j)]);

  // log-gamma path keeps large degrees finite
  const auto b600 = orthonormal_basis_weights(600);
  for (double w : b600) CHECK(std::isfinite(w));
  CHECK(b600[0] == doctest::Approx(std::sqrt(601.0 / kPi)).epsilon(1e-12));

  CHECK_THROWS_AS(orthonormal_basis_weights(0), std::invalid_argument);
}

TEST_CASE("weighted monomials have identity Gram matrix") {
  // 2D quadrature oracle: angular trapezoid (exact for trig polynomials)
  // times adaptive radial integration of
  //   b_i b_j r^{i+j} e^{i(i-j)theta} (1+r^2)^{-n} dA_FS,  t = r^2.
  for (int n : {1, 5, 20}) {
    const auto b = orthonormal_basis_weights(n);
    const int angular = 4 * n + 8;
    for (int i = 0; i <= n; ++i) {
      for (int j = i; j <= n; ++j) {
        double ang_re = 0.0;
        for (int k = 0; k < angular; ++k) {
          ang_re += std::cos(2.0 * kPi * k * (i - j) / angular);
        }
        ang_re *= 2.0 * kPi / angular;
        const double radial = testutil::integrate(
            [&](double t) {
              return 0.5 * std::pow(t, 0.5 * (i + j)) *
                     std::exp(-(n + 2.0) * std::log1p(t));
            },
            0.0, 0.0, true);
        const double gram = b[static_cast<std::size_t>(i)] *
                            b[static_cast<std::size_t>(j)] * ang_re * radial;
        CHECK(std::abs(gram - (i == j ? 1.0 : 0.0)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("gaussian sampling moments") {
  rng::Stream st(2024);
  const int n = 20;
  const int draws = 10000;
  double mean_norm2 = 0.0;
  const complex<double> z{0.37, -0.21};
  double mean_h2 = 0.0;
  const double weight = std::exp(-n * geometry::fs_potential(z));
  for (int i = 0; i < draws; ++i) {
    Section s = sample_gaussian(n, st);
    double norm2 = 0.0;
    for (const auto& c : s.coeffs) norm2 += std::norm(c);
    mean_norm2 += norm2;
    const auto a = monomial_coeffs(s);
    complex<double> f{0.0, 0.0};
    for (std::size_t k = a.size(); k-- > 0;) f = f * z + a[k];
    mean_h2 += std::norm(f) * weight;
  }
  mean_norm2 /= draws;
  mean_h2 /= draws;
  CHECK(std::abs(mean_norm2 - 1.0) < 0.02);
  // E |s(z)|^2_{h^n} = bergman_diagonal / d_n = 1/pi
  CHECK(std::abs(mean_h2 - 1.0 / kPi) < 0.02 / kPi);
}

TEST_CASE("sampling is deterministic given the stream") {
  rng::Stream a(555), b(555);
  const Section sa = sample_gaussian(12, a);
  const Section sb = sample_gaussian(12, b);
  for (std::size_t j = 0; j < sa.coeffs.size(); ++j)
    CHECK(sa.coeffs[j] == sb.coeffs[j]);
}

TEST_CASE("draw_section reproducibility and stream independence") {
  const Section a = draw_section(15, Ensemble::Gaussian, 42, 7);
  const Section b = draw_section(15, Ensemble::Gaussian, 42, 7);
  const Section c = draw_section(15, Ensemble::Gaussian, 42, 8);
  CHECK(a.seed_fingerprint == b.seed_fingerprint);
  for (std::size_t j = 0; j < a.coeffs.size(); ++j) CHECK(a.coeffs[j] == b.coeffs[j]);
  CHECK(a.coeffs[0] != c.coeffs[0]);
  CHECK(a.sample_id == 7);
}

TEST_CASE("spherical draws sit on the unit sphere") {
  rng::Stream st(99);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(st.next_u64() % 100);
    const Section s = sample_spherical(n, st);
    double norm2 = 0.0;
    for (const auto& c : s.coeffs) norm2 += std::norm(c);
    CHECK(std::abs(norm2 - 1.0) <= 1e-14);
    CHECK(s.ensemble == Ensemble::Spherical);
  }
}

TEST_CASE("l2 norm basics") {
  Section zero;
  zero.n = 4;
  zero.coeffs.assign(5, {0.0, 0.0});
  CHECK(l2_norm(zero) == 0.0);

  rng::Stream st(7);
  const int draws = 10000;
  double mean = 0.0;
  for (int i = 0; i < draws; ++i) {
    const Section s = sample_gaussian(50, st);
    const double nrm = l2_norm(s);
    mean += nrm * nrm;
  }
  CHECK(std::abs(mean / draws - 1.0) < 0.02);
}

TEST_CASE("hermitian law: |s(z)|^2 is exponential with mean 1/pi") {
  rng::Stream st(404);
  const int n = 25;
  const complex<double> z{-0.4, 0.55};
  const double weight = std::exp(-n * geometry::fs_potential(z));
  std::vector<double> values;
  values.reserve(10000);
  for (int i = 0; i < 10000; ++i) {
    const Section s = sample_gaussian(n, st);
    const auto a = monomial_coeffs(s);
    complex<double> f{0.0, 0.0};
    for (std::size_t k = a.size(); k-- > 0;) f = f * z + a[k];
    values.push_back(std::norm(f) * weight);
  }
  const double d = experiments::ks_statistic(
      values, [](double u) { return u <= 0 ? 0.0 : -std::expm1(-kPi * u); });
  CHECK(experiments::ks_p_value(d, 10000) > 0.001);
}

TEST_CASE("rotation invariance of the value law") {
  rng::Stream st(505);
  const int n = 18;
  const int draws = 10000;
  std::vector<double> at_zero;
  at_zero.reserve(draws);
  for (int i = 0; i < draws; ++i) {
    const Section s = sample_gaussian(n, st);
    at_zero.push_back(hermitian_value(s, {geometry::Chart::Z, {0.0, 0.0}}));
  }
  for (const complex<double> z :
       {complex<double>{0.8, 0.0}, complex<double>{-0.3, 1.1},
        complex<double>{0.05, -0.4}}) {
    std::vector<double> at_z;
    at_z.reserve(draws);
    for (int i = 0; i < draws; ++i) {
      const Section s = sample_gaussian(n, st);
      at_z.push_back(hermitian_value(s, geometry::canonicalize({geometry::Chart::Z, z})));
    }
    const double d = experiments::ks_two_sample(at_zero, at_z);
    CHECK(experiments::ks_p_value(d, draws * 0.5) > 0.001);
  }
}

TEST_CASE("su2 rotation is unitary and preserves hermitian values") {
  rng::Stream st(606);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(st.next_u64() % 8);
    const Section s = sample_gaussian(n, st);
    complex<double> alpha, beta;
    random_su2(st, alpha, beta);
    const Section rot = su2_rotate(s, alpha, beta);
    CHECK(l2_norm(rot) == doctest::Approx(l2_norm(s)).epsilon(1e-12));
    const double r = 2.0 * st.next_unit_open();
    const double th = 2 * kPi * st.next_unit_open();
    const complex<double> z{r * std::cos(th), r * std::sin(th)};
    const complex<double> image = mobius_image(z, alpha, beta);
    const double lhs =
        hermitian_value(s, geometry::canonicalize({geometry::Chart::Z, image}));
    const double rhs =
        hermitian_value(rot, geometry::canonicalize({geometry::Chart::Z, z}));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
  }
}
