#include "cvlab/section.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cvlab {

const char* to_string(Ensemble e) {
  return e == Ensemble::Gaussian ? "gaussian" : "spherical";
}

std::vector<double> orthonormal_basis_weights(int n) {
  if (n < 1) throw std::invalid_argument("orthonormal_basis_weights: n >= 1 required");
  std::vector<double> b(static_cast<std::size_t>(n) + 1);
  const double log_npi = std::log(static_cast<double>(n) + 1.0) -
                         std::log(std::numbers::pi);
  const double lg_n1 = std::lgamma(static_cast<double>(n) + 1.0);
  for (int j = 0; j <= n; ++j) {
    const double log_binom = lg_n1 - std::lgamma(static_cast<double>(j) + 1.0) -
                             std::lgamma(static_cast<double>(n - j) + 1.0);
    b[static_cast<std::size_t>(j)] = std::exp(0.5 * (log_npi + log_binom));
  }
  return b;
}

std::vector<std::complex<double>> monomial_coeffs(const Section& s) {
  if (s.coeffs.size() != static_cast<std::size_t>(s.n) + 1)
    throw std::invalid_argument("monomial_coeffs: coefficient count != n+1");
  const auto b = orthonormal_basis_weights(s.n);
  std::vector<std::complex<double>> a(s.coeffs.size());
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = s.coeffs[j] * b[j];
  return a;
}

Jet2 eval_jet2(const std::vector<std::complex<double>>& a,
               std::complex<double> z) {
  std::complex<double> f{0.0, 0.0}, d{0.0, 0.0}, h{0.0, 0.0};
  for (std::size_t k = a.size(); k-- > 0;) {
    h = h * z + d;
    d = d * z + f;
    f = f * z + a[k];
  }
  return {f, d, 2.0 * h};
}

}  // namespace cvlab
