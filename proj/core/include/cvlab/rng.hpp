#pragma once

#include <complex>
#include <cstdint>

namespace cvlab::rng {

// SplitMix64 avalanche finalizer.
std::uint64_t avalanche(std::uint64_t x);

// Fixed 64-bit mix used to derive child seeds: child = mix64(master, id).
// Results are therefore independent of thread count and evaluation order.
std::uint64_t mix64(std::uint64_t a, std::uint64_t b);

// xoshiro256++ stream, state expanded from a 64-bit seed via SplitMix64.
// Self-contained so that sequences are identical across compilers.
class Stream {
 public:
  explicit Stream(std::uint64_t seed);

  std::uint64_t next_u64();
  double next_unit_open();  // uniform in (0,1)
  double next_gaussian();   // N(0,1), Box-Muller pair cache

  // Complex Gaussian with independent N(0, sigma^2) real/imaginary parts.
  std::complex<double> next_cgaussian(double sigma);

 private:
  std::uint64_t s_[4];
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace cvlab::rng
