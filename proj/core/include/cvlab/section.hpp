#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace cvlab {

enum class Ensemble { Gaussian, Spherical };

const char* to_string(Ensemble e);

// A degree-n section in the L^2-orthonormal basis e_j = b_j z^j with
// b_j = sqrt((n+1) C(n,j) / pi).  The basis is orthonormal for the
// area-pi Fubini-Study inner product, so the L^2 norm is the plain
// Euclidean norm of `coeffs`.
struct Section {
  int n = 0;
  std::vector<std::complex<double>> coeffs;  // size n+1
  Ensemble ensemble = Ensemble::Gaussian;
  std::int64_t sample_id = 0;
  std::uint64_t seed_fingerprint = 0;
};

// b_j, j = 0..n.  Computed through log-gamma so arbitrary degrees are safe
// from binomial overflow; b_j == b_{n-j} exactly.
std::vector<double> orthonormal_basis_weights(int n);

// Monomial coefficients a_j = c_j * b_j.
std::vector<std::complex<double>> monomial_coeffs(const Section& s);

// Value and first two derivatives of a polynomial, one Horner pass.
struct Jet2 {
  std::complex<double> f, df, d2f;
};
Jet2 eval_jet2(const std::vector<std::complex<double>>& a, std::complex<double> z);

}  // namespace cvlab
