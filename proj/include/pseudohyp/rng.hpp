#pragma once

// Portable draws from mt19937_64; the std distributions are implementation
// defined, which would break byte-identical reports across standard libraries.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace pseudohyp {

using Rng = std::mt19937_64;

inline double uniform01(Rng& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& g, double a, double b) { return a + (b - a) * uniform01(g); }

inline double normal(Rng& g) {
  double u1 = uniform01(g);
  while (u1 <= 0.0) u1 = uniform01(g);
  const double u2 = uniform01(g);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace pseudohyp
