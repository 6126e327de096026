#pragma once

#include <stdexcept>
#include <string>

namespace cvlab {

// Quadrature could not certify the requested absolute tolerance.
struct ToleranceNotMet : std::runtime_error {
  explicit ToleranceNotMet(const std::string& what) : std::runtime_error(what) {}
};

// Resultant elimination produced a numerically unusable polynomial;
// callers retry after a random rotation of the sphere.
struct IllConditioned : std::runtime_error {
  explicit IllConditioned(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cvlab
