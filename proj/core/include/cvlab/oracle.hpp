#pragma once

#include <cstdint>
#include <vector>

#include "cvlab/critpoints.hpp"
#include "cvlab/section.hpp"

namespace cvlab::critpoints {

// Independent ground truth for small degrees (1 <= n <= 8): treats zbar as
// a free variable w and eliminates it from the polynomial system
//   (1+zw) s'(z) - n w s(z) = 0,   (1+zw) t'(w) - n z t(w) = 0
// (t = coefficient-conjugate of s), reducing to a univariate polynomial
// whose roots come from companion-matrix eigenvalues.  Solutions off the
// real slice |w - conj(z)| >= 1e-8 are discarded.  Throws IllConditioned
// when the eliminant degenerates.
std::vector<CriticalPoint> algebraic_oracle(const Section& s);

// algebraic_oracle with up to `max_retries` random rotations of the sphere
// when the eliminant is ill conditioned; retry rotations are drawn from
// mix64(seed_fingerprint, attempt).
std::vector<CriticalPoint> algebraic_oracle_robust(const Section& s,
                                                   int max_retries = 4);

// Greedy matching between two point sets; returns the largest pairing
// distance, or +inf if sizes differ or classifications disagree.
double pairing_distance(const std::vector<CriticalPoint>& a,
                        const std::vector<CriticalPoint>& b);

}  // namespace cvlab::critpoints
