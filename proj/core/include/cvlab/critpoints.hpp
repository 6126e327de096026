#pragma once

#include <complex>
#include <vector>

#include "cvlab/geometry.hpp"
#include "cvlab/section.hpp"

namespace cvlab::critpoints {

// Saddles of log|s|_h have Morse index 1 and topological index +1;
// local maxima have Morse index 2 and topological index -1.  Minima occur
// only at zeros of s and are never reported.
enum class MorseIndex { Saddle = 1, Max = 2 };

const char* to_string(MorseIndex k);

struct CriticalPoint {
  geometry::ChartPoint location;  // canonical chart
  double value = 0.0;             // x = |s|_{h^n} > 0
  MorseIndex morse_index = MorseIndex::Saddle;
  int topological_index = 0;      // +1 saddle, -1 max
  double discriminant = 0.0;      // |Q|^2 - |Lambda|^2, canonical chart
  double newton_residual = 0.0;   // invariant gradient norm, unit-L2 scale
};

struct FinderOptions {
  double starts_per_degree = 6.0;
  double newton_tol = 1e-12;
  int max_iters = 60;
  double dedup_radius = 1e-7;   // chordal distance
  double degeneracy_band = 1e-9;
};

// V = (1+|z|^2) s'(z) - n conj(z) s(z) and its Wirtinger derivatives.
// V = 0 is equivalent to grad_h s = 0 away from zeros of s.
struct GradientField {
  std::complex<double> v, vz, vzbar;
};
GradientField gradient_field(const Section& s, std::complex<double> z);

struct Classification {
  MorseIndex morse_index = MorseIndex::Saddle;
  int topological_index = 0;
  double discriminant = 0.0;
  bool degenerate = false;  // ||Q| - |Lambda|| inside the band
};

// Second-order data of log|s|^2_{h^n}: Q = s''/s - (s'/s)^2 +
// n zbar^2/(1+|z|^2)^2 and Lambda = -n/(1+|z|^2)^2.  Max iff |Q| < |Lambda|.
// Valid at points where V(z) ~ 0 and s(z) != 0.
Classification classify(const Section& s, std::complex<double> z,
                        double degeneracy_band = 1e-9);

struct FinderResult {
  std::vector<CriticalPoint> points;  // sorted by (value, re, im)
  int saddles = 0;
  int maxima = 0;
  bool complete = false;    // #saddles - #maxima == n - 2 and #maxima >= 1
  bool degenerate = false;  // some point landed in the degeneracy band
  bool retried = false;
  int starts_used = 0;
};

// Multistart Newton in both charts; starts are Fubini-Study uniform
// (count = starts_per_degree * n) plus the roots of s' in each chart,
// drawn from the section's own seed so runs are reproducible.  Retries
// once with 4x starts if the Morse count identity fails.
FinderResult find_critical_points(const Section& s,
                                  const FinderOptions& opts = {});

}  // namespace cvlab::critpoints
