#include "cvlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace cvlab::rng {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t avalanche(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return avalanche(a + 0x9e3779b97f4a7c15ULL * (b + 0x632be59bd9b4e019ULL));
}

Stream::Stream(std::uint64_t seed) {
  for (auto& word : s_) word = splitmix64_next(seed);
}

std::uint64_t Stream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Stream::next_unit_open() {
  // 53-bit mantissa in (0,1): (k + 0.5) * 2^-53
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Stream::next_gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double r = std::sqrt(-2.0 * std::log(next_unit_open()));
  const double phi = 2.0 * std::numbers::pi * next_unit_open();
  cached_ = r * std::sin(phi);
  has_cached_ = true;
  return r * std::cos(phi);
}

std::complex<double> Stream::next_cgaussian(double sigma) {
  const double r = std::sqrt(-2.0 * std::log(next_unit_open()));
  const double phi = 2.0 * std::numbers::pi * next_unit_open();
  return {sigma * r * std::cos(phi), sigma * r * std::sin(phi)};
}

}  // namespace cvlab::rng
