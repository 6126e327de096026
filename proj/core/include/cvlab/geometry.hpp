#pragma once

#include <complex>

#include <Eigen/Core>

#include "cvlab/section.hpp"

namespace cvlab::geometry {

// CP^1 with the Fubini-Study metric normalized to total area pi.  Every
// kernel quantity below is exact for this model.
struct SurfaceModel {
  const char* name;
  int euler_characteristic;
  double area;
  double scalar_curvature;  // complex scalar curvature S
  double a1;                // first diagonal kernel correction, S/2
};
SurfaceModel cp1();

enum class Chart { Z, W };  // w = 1/z

struct ChartPoint {
  Chart chart = Chart::Z;
  std::complex<double> coord{0.0, 0.0};
};

// Canonical representation: chart Z iff |coord| <= 1.
ChartPoint canonicalize(const ChartPoint& p);
ChartPoint flip(const ChartPoint& p);

// Chordal (sine of Fubini-Study angle) distance, in [0,1]; chart-agnostic.
double chordal_distance(const ChartPoint& a, const ChartPoint& b);

// Local Kaehler potential, log(1+|z|^2).
double fs_potential(std::complex<double> z);

// Representation of the same section in the opposite chart,
// stilde(w) = w^n s(1/w); in the orthonormal basis this reverses coeffs.
Section chart_flip(const Section& s);

// x = |s(z)| (1+|z|^2)^(-n/2) in the chart carried by p; chart-independent.
double hermitian_value(const Section& s, const ChartPoint& p);

// h^n-normalized diagonal of the reproducing kernel: (n+1)/pi, constant.
double bergman_diagonal(int n);

// Covariance data of (value, derivative, second derivative) at a point in
// an adapted frame, as they enter the critical-value Kac-Rice integrand.
struct CovarianceData {
  int n = 0;
  int d_n = 0;                    // dim of the section space, n+1
  double a_n = 0.0;               // E|grad s|^2 = n/pi
  Eigen::Matrix2cd lambda;        // cov of (s'', s): diag(2n(n-1)/pi, 1/pi)
  Eigen::Matrix2cd lambda_tilde;  // rescaled: diag(2(n^2-1)/n^2, (n+1)/n)
};

// Exact CP^1 values; throws std::domain_error for n < 2 (lambda degenerates).
CovarianceData covariance_data(int n);

}  // namespace cvlab::geometry
