#include "cvlab/ensembles.hpp"

#include <cmath>
#include <stdexcept>

namespace cvlab::ensembles {

Section sample_gaussian(int n, rng::Stream& stream) {
  if (n < 1) throw std::invalid_argument("sample_gaussian: n >= 1 required");
  Section s;
  s.n = n;
  s.ensemble = Ensemble::Gaussian;
  s.coeffs.resize(static_cast<std::size_t>(n) + 1);
  const double sigma = std::sqrt(0.5 / (static_cast<double>(n) + 1.0));
  for (auto& c : s.coeffs) c = stream.next_cgaussian(sigma);
  return s;
}

Section sample_spherical(int n, rng::Stream& stream) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Section s = sample_gaussian(n, stream);
    const double norm = l2_norm(s);
    if (norm > 0.0) {
      for (auto& c : s.coeffs) c /= norm;
      s.ensemble = Ensemble::Spherical;
      return s;
    }
  }
  throw std::runtime_error("sample_spherical: repeated zero-norm draws");
}

double l2_norm(const Section& s) {
  long double sum = 0.0L;
  for (const auto& c : s.coeffs)
    sum += static_cast<long double>(std::norm(c));
  return static_cast<double>(std::sqrt(sum));
}

Section scaled(const Section& s, std::complex<double> factor) {
  Section out = s;
  for (auto& c : out.coeffs) c *= factor;
  return out;
}

Section draw_section(int n, Ensemble ensemble, std::uint64_t master_seed,
                     std::int64_t sample_id) {
  const std::uint64_t child =
      rng::mix64(master_seed, static_cast<std::uint64_t>(sample_id));
  rng::Stream stream(child);
  Section s = ensemble == Ensemble::Gaussian ? sample_gaussian(n, stream)
                                             : sample_spherical(n, stream);
  s.sample_id = sample_id;
  s.seed_fingerprint = child;
  return s;
}

std::complex<double> mobius_image(std::complex<double> z,
                                  std::complex<double> alpha,
                                  std::complex<double> beta) {
  return (alpha * z + beta) / (-std::conj(beta) * z + std::conj(alpha));
}

Section su2_rotate(const Section& s, std::complex<double> alpha,
                   std::complex<double> beta) {
  const int n = s.n;
  const auto a = monomial_coeffs(s);
  // (rot s)(z) = (-conj(beta) z + conj(alpha))^n s(mobius_image(z)), expanded as
  // sum_j a_j (alpha z + beta)^j (-conj(beta) z + conj(alpha))^(n-j).
  const std::complex<double> p1 = alpha, p0 = beta;           // alpha z + beta
  const std::complex<double> q1 = -std::conj(beta), q0 = std::conj(alpha);
  std::vector<std::vector<std::complex<double>>> ppow(
      static_cast<std::size_t>(n) + 1),
      qpow(static_cast<std::size_t>(n) + 1);
  ppow[0] = {1.0};
  qpow[0] = {1.0};
  for (int k = 1; k <= n; ++k) {
    const auto& pp = ppow[static_cast<std::size_t>(k) - 1];
    const auto& qp = qpow[static_cast<std::size_t>(k) - 1];
    std::vector<std::complex<double>> pnew(pp.size() + 1, 0.0),
        qnew(qp.size() + 1, 0.0);
    for (std::size_t i = 0; i < pp.size(); ++i) {
      pnew[i] += p0 * pp[i];
      pnew[i + 1] += p1 * pp[i];
      qnew[i] += q0 * qp[i];
      qnew[i + 1] += q1 * qp[i];
    }
    ppow[static_cast<std::size_t>(k)] = std::move(pnew);
    qpow[static_cast<std::size_t>(k)] = std::move(qnew);
  }
  std::vector<std::complex<double>> rot(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = 0; j <= n; ++j) {
    const auto& pp = ppow[static_cast<std::size_t>(j)];
    const auto& qp = qpow[static_cast<std::size_t>(n - j)];
    for (std::size_t i = 0; i < pp.size(); ++i)
      for (std::size_t k = 0; k < qp.size(); ++k)
        rot[i + k] += a[static_cast<std::size_t>(j)] * pp[i] * qp[k];
  }
  Section out = s;
  const auto b = orthonormal_basis_weights(n);
  for (std::size_t j = 0; j < rot.size(); ++j) out.coeffs[j] = rot[j] / b[j];
  return out;
}

void random_su2(rng::Stream& stream, std::complex<double>& alpha,
                std::complex<double>& beta) {
  std::complex<double> a, b;
  double norm = 0.0;
  do {
    a = stream.next_cgaussian(1.0);
    b = stream.next_cgaussian(1.0);
    norm = std::sqrt(std::norm(a) + std::norm(b));
  } while (norm < 1e-6);
  alpha = a / norm;
  beta = b / norm;
}

}  // namespace cvlab::ensembles
