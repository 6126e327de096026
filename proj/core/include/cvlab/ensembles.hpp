#pragma once

#include <complex>
#include <cstdint>

#include "cvlab/rng.hpp"
#include "cvlab/section.hpp"

namespace cvlab::ensembles {

// Coefficients i.i.d. centered complex Gaussian with E|c_j|^2 = 1/(n+1),
// so E ||s||_{L^2}^2 = 1.
Section sample_gaussian(int n, rng::Stream& stream);

// Gaussian draw scaled to the unit L^2 sphere.
Section sample_spherical(int n, rng::Stream& stream);

// sqrt(sum |c_j|^2); exact because the basis is orthonormal.
double l2_norm(const Section& s);

Section scaled(const Section& s, std::complex<double> factor);

// Reproducible draw: stream seed = mix64(master_seed, sample_id).
Section draw_section(int n, Ensemble ensemble, std::uint64_t master_seed,
                     std::int64_t sample_id);

// Unitary rotation of the sphere by the SU(2) element [[alpha, beta],
// [-conj(beta), conj(alpha)]]; |alpha|^2 + |beta|^2 must be 1.  Preserves
// the L^2 norm and all hermitian values: |s|(mobius_image(z)) = |rot s|(z).
Section su2_rotate(const Section& s, std::complex<double> alpha,
                   std::complex<double> beta);
std::complex<double> mobius_image(std::complex<double> z,
                                  std::complex<double> alpha,
                                  std::complex<double> beta);

// Haar-ish random rotation parameters (uniform on the unit 3-sphere).
void random_su2(rng::Stream& stream, std::complex<double>& alpha,
                std::complex<double>& beta);

}  // namespace cvlab::ensembles
