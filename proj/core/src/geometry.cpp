#include "cvlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cvlab::geometry {

namespace {
constexpr double kPi = std::numbers::pi;
}

SurfaceModel cp1() {
  // area pi, complex scalar curvature 2, a1 = S/2 = 1; Gauss-Bonnet:
  // a1 * area = (pi/2) * chi holds exactly.
  return {"CP1", 2, kPi, 2.0, 1.0};
}

ChartPoint canonicalize(const ChartPoint& p) {
  if (std::abs(p.coord) <= 1.0) return p;
  return flip(p);
}

ChartPoint flip(const ChartPoint& p) {
  const Chart other = p.chart == Chart::Z ? Chart::W : Chart::Z;
  if (p.coord == std::complex<double>{0.0, 0.0}) {
    // 0 in one chart is the point at infinity of the other; keep the
    // exact representation instead of dividing.
    return {other, {0.0, 0.0}};
  }
  return {other, 1.0 / p.coord};
}

double chordal_distance(const ChartPoint& a, const ChartPoint& b) {
  // Homogeneous coordinates: Z chart (1, z), W chart (w, 1).
  const std::complex<double> a0 = a.chart == Chart::Z ? 1.0 : a.coord;
  const std::complex<double> a1 = a.chart == Chart::Z ? a.coord : 1.0;
  const std::complex<double> b0 = b.chart == Chart::Z ? 1.0 : b.coord;
  const std::complex<double> b1 = b.chart == Chart::Z ? b.coord : 1.0;
  const double cross = std::abs(a0 * b1 - a1 * b0);
  const double na = std::sqrt(std::norm(a0) + std::norm(a1));
  const double nb = std::sqrt(std::norm(b0) + std::norm(b1));
  return cross / (na * nb);
}

double fs_potential(std::complex<double> z) { return std::log1p(std::norm(z)); }

Section chart_flip(const Section& s) {
  Section out = s;
  std::reverse(out.coeffs.begin(), out.coeffs.end());
  return out;
}

double hermitian_value(const Section& s, const ChartPoint& p) {
  const Section& rep = p.chart == Chart::Z ? s : chart_flip(s);
  const auto a = monomial_coeffs(rep);
  std::complex<double> f{0.0, 0.0};
  for (std::size_t k = a.size(); k-- > 0;) f = f * p.coord + a[k];
  return std::abs(f) * std::exp(-0.5 * s.n * fs_potential(p.coord));
}

double bergman_diagonal(int n) {
  if (n < 1) throw std::domain_error("bergman_diagonal: n >= 1 required");
  return (static_cast<double>(n) + 1.0) / kPi;
}

CovarianceData covariance_data(int n) {
  if (n < 2)
    throw std::domain_error(
        "covariance_data: degenerate for n < 2 (second-derivative variance vanishes)");
  const double dn = static_cast<double>(n);
  CovarianceData cov;
  cov.n = n;
  cov.d_n = n + 1;
  cov.a_n = dn / kPi;
  cov.lambda = Eigen::Matrix2cd::Zero();
  cov.lambda(0, 0) = 2.0 * dn * (dn - 1.0) / kPi;
  cov.lambda(1, 1) = 1.0 / kPi;
  // lambda_tilde = (pi d_n / n) D^-1 lambda D^-1 with D = diag(n, 1),
  // the xi -> n xi rescaling of the Kac-Rice integrand.
  cov.lambda_tilde = Eigen::Matrix2cd::Zero();
  cov.lambda_tilde(0, 0) = 2.0 * (dn * dn - 1.0) / (dn * dn);
  cov.lambda_tilde(1, 1) = (dn + 1.0) / dn;
  return cov;
}

}  // namespace cvlab::geometry
