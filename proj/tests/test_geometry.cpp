#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "cvlab/ensembles.hpp"
#include "cvlab/geometry.hpp"
#include "cvlab/rng.hpp"
#include "test_util.hpp"

using namespace cvlab;
using namespace cvlab::geometry;
using std::complex;

namespace {
constexpr double kPi = std::numbers::pi;

// Diagonal of the normalized covariance kernel, (1/pi)(1+t)^n with t = z wbar.
double kernel_diag(int n, double t) {
  return std::pow(1.0 + t, n) / kPi;
}

// 4th-order central stencils on the diagonal kernel data.
double fd_first(int n, double h) {
  return (kernel_diag(n, -2 * h) - 8 * kernel_diag(n, -h) +
          8 * kernel_diag(n, h) - kernel_diag(n, 2 * h)) /
         (12 * h);
}
double fd_second(int n, double h) {
  return (-kernel_diag(n, -2 * h) + 16 * kernel_diag(n, -h) -
          30 * kernel_diag(n, 0.0) + 16 * kernel_diag(n, h) -
          kernel_diag(n, 2 * h)) /
         (12 * h * h);
}
}  // namespace

TEST_CASE("fs_potential basics") {
  CHECK(fs_potential({0.0, 0.0}) == 0.0);
  CHECK(fs_potential({1.0, 0.0}) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  // rotation invariance: phi(i) == phi(1)
  CHECK(fs_potential({0.0, 1.0}) == fs_potential({1.0, 0.0}));
  CHECK(fs_potential({0.3, -0.4}) >= 0.0);
}

TEST_CASE("surface model constants") {
  const SurfaceModel m = cp1();
  CHECK(m.euler_characteristic == 2);
  CHECK(m.area == kPi);
  CHECK(m.scalar_curvature == 2.0);
  CHECK(m.a1 == 1.0);
  CHECK(m.a1 == 0.5 * m.scalar_curvature);
  // Gauss-Bonnet for the constant-curvature model
  CHECK(m.a1 * m.area == doctest::Approx(0.5 * kPi * m.euler_characteristic).epsilon(1e-15));
}

TEST_CASE("chart points canonicalize and flip") {
  rng::Stream st(11);
  for (int i = 0; i < 200; ++i) {
    const complex<double> z{4.0 * st.next_unit_open() - 2.0,
                            4.0 * st.next_unit_open() - 2.0};
    const ChartPoint p = canonicalize({Chart::Z, z});
    CHECK(std::abs(p.coord) <= 1.0 + 1e-12);
    if (std::abs(z) <= 1.0) {
      CHECK(p.chart == Chart::Z);
      CHECK(p.coord == z);
    } else {
      CHECK(p.chart == Chart::W);
    }
    const ChartPoint back = flip(flip(p));
    CHECK(back.chart == p.chart);
    CHECK(std::abs(back.coord - p.coord) <= 1e-15);
    // flipped representation names the same point
    CHECK(chordal_distance(p, flip(p)) <= 1e-13);
  }
  const ChartPoint pole = flip({Chart::Z, {0.0, 0.0}});
  CHECK(pole.chart == Chart::W);
  CHECK(pole.coord == complex<double>{0.0, 0.0});
}

TEST_CASE("chordal distance") {
  CHECK(chordal_distance({Chart::Z, {0.3, 0.1}}, {Chart::Z, {0.3, 0.1}}) == 0.0);
  // antipodes are at the maximal distance 1
  CHECK(chordal_distance({Chart::Z, {0.0, 0.0}}, {Chart::W, {0.0, 0.0}}) ==
        doctest::Approx(1.0));
  // same-chart formula |z1-z2|/sqrt((1+|z1|^2)(1+|z2|^2))
  const complex<double> a{0.2, -0.5}, b{-0.7, 0.4};
  const double expected =
      std::abs(a - b) / std::sqrt((1 + std::norm(a)) * (1 + std::norm(b)));
  CHECK(chordal_distance({Chart::Z, a}, {Chart::Z, b}) ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("chart_flip reverses coefficients and is an involution") {
  Section s;
  s.n = 3;
  s.coeffs = {{1, 0}, {2, -1}, {0, 3}, {-4, 0}};
  const Section f = chart_flip(s);
  CHECK(f.coeffs[0] == s.coeffs[3]);
  CHECK(f.coeffs[1] == s.coeffs[2]);
  const Section ff = chart_flip(f);
  for (std::size_t j = 0; j < s.coeffs.size(); ++j)
    CHECK(ff.coeffs[j] == s.coeffs[j]);
}

TEST_CASE("hermitian_value examples") {
  // e_0 at the origin: phi(0) = 0, so the value is the weight b_0
  for (int n : {1, 5, 12}) {
    Section s;
    s.n = n;
    s.coeffs.assign(static_cast<std::size_t>(n) + 1, {0.0, 0.0});
    s.coeffs[0] = {1.0, 0.0};
    CHECK(hermitian_value(s, {Chart::Z, {0.0, 0.0}}) ==
          doctest::Approx(std::sqrt((n + 1.0) / kPi)).epsilon(1e-13));
  }
  // value vanishes at a zero of s: s = e_0 + e_1 vanishes at z = -1
  Section s;
  s.n = 1;
  s.coeffs = {{1.0, 0.0}, {1.0, 0.0}};
  CHECK(hermitian_value(s, {Chart::Z, {-1.0, 0.0}}) ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("hermitian_value is chart independent") {
  rng::Stream st(22);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(st.next_u64() % 49);
    Section s = ensembles::sample_gaussian(n, st);
    // 0.5 < |z| < 2
    const double r = 0.5 + 1.5 * st.next_unit_open();
    const double th = 2 * kPi * st.next_unit_open();
    const complex<double> z{r * std::cos(th), r * std::sin(th)};
    const double vz = hermitian_value(s, {Chart::Z, z});
    const double vw = hermitian_value(s, {Chart::W, 1.0 / z});
    if (vz > 1e-8) {
      CHECK(std::abs(vz - vw) <= 1e-10 * vz);
      ++checked;
    }
  }
  CHECK(checked > 900);
}

TEST_CASE("bergman diagonal") {
  CHECK(bergman_diagonal(1) == doctest::Approx(2.0 / kPi).epsilon(1e-15));
  CHECK(bergman_diagonal(10) == doctest::Approx(11.0 / kPi).epsilon(1e-15));
  CHECK_THROWS_AS(bergman_diagonal(0), std::domain_error);

  // oracle: sum_j |e_j(z)|^2 e^{-n phi} is constant and equals (n+1)/pi
  rng::Stream st(33);
  for (int n : {1, 7, 30}) {
    const auto b = orthonormal_basis_weights(n);
    for (int trial = 0; trial < 20; ++trial) {
      const double r = 2.0 * st.next_unit_open();
      double sum = 0.0;
      for (int j = 0; j <= n; ++j)
        sum += b[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(j)] *
               std::pow(r * r, j);
      sum *= std::exp(-n * std::log1p(r * r));
      CHECK(sum == doctest::Approx(bergman_diagonal(n)).epsilon(1e-11));
    }
  }

  // Riemann-Roch: integral of the diagonal against the area form is n+1
  for (int n : {1, 5, 20}) {
    const double integral = testutil::integrate(
        [n](double t) {
          return bergman_diagonal(n) * std::exp(-n * std::log1p(t)) /
                 ((1.0 + t) * (1.0 + t)) * kPi;
        },
        0.0, 0.0, true);
    CHECK(integral == doctest::Approx(n + 1.0).epsilon(1e-10));
  }
}

TEST_CASE("covariance data exact values") {
  CHECK_THROWS_AS(covariance_data(1), std::domain_error);
  const CovarianceData c2 = covariance_data(2);
  CHECK(c2.d_n == 3);
  CHECK(c2.a_n == doctest::Approx(2.0 / kPi).epsilon(1e-15));
  CHECK(c2.lambda(0, 0).real() == doctest::Approx(4.0 / kPi).epsilon(1e-15));
  CHECK(c2.lambda(1, 1).real() == doctest::Approx(1.0 / kPi).epsilon(1e-15));
  CHECK(c2.lambda(0, 1) == std::complex<double>{0.0, 0.0});

  const CovarianceData c10 = covariance_data(10);
  CHECK(c10.lambda_tilde(0, 0).real() == doctest::Approx(1.98).epsilon(1e-15));
  CHECK(c10.lambda_tilde(1, 1).real() == doctest::Approx(1.1).epsilon(1e-15));
}

TEST_CASE("covariance data matches finite differences of the exact kernel") {
  // A_n = d/dt at 0, Lambda_00 = 2 d^2/dt^2 at 0, Lambda_11 = value at 0
  for (int n : {5, 20, 50}) {
    const CovarianceData cov = covariance_data(n);
    const double h = 5e-4 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(fd_first(n, h) - cov.a_n) <= 1e-6 * cov.a_n);
    const double lam00 = cov.lambda(0, 0).real();
    CHECK(std::abs(2.0 * fd_second(n, h) - lam00) <= 1e-6 * lam00);
    CHECK(kernel_diag(n, 0.0) ==
          doctest::Approx(cov.lambda(1, 1).real()).epsilon(1e-14));
  }
}

TEST_CASE("lambda_tilde asymptotics") {
  // || n (lambda_tilde - diag(2,1)) - diag(0,1) || decreases like 1/n
  auto deviation = [](int n) {
    const CovarianceData c = covariance_data(n);
    const double d0 = n * (c.lambda_tilde(0, 0).real() - 2.0) - 0.0;
    const double d1 = n * (c.lambda_tilde(1, 1).real() - 1.0) - 1.0;
    return std::sqrt(d0 * d0 + d1 * d1);
  };
  const double e10 = deviation(10), e100 = deviation(100), e1000 = deviation(1000);
  CHECK(e10 > e100);
  CHECK(e100 > e1000);
  CHECK(e10 <= 2.01 / 10.0);
  CHECK(e100 <= 2.01 / 100.0);
  CHECK(e1000 <= 2.01 / 1000.0);
}
