#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sphd {

// All randomness flows from user-supplied 64-bit seeds through mt19937_64
// (the engine's output sequence is pinned by the standard) and the explicit
// transforms below, so identical seeds replay bit-identically on any build
// of the same binary.

// SplitMix64 finalizer; the documented stream-splitting function. Subtask i
// of a run seeded with s draws from mt19937_64(split_seed(s, i)).
inline std::uint64_t split_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

// Uniform double in (0, 1]; 53 random bits, never zero (safe under log).
inline double uniform_pos(Rng& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

// Uniform double in [0, 1).
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// One Box-Muller pair of standard normals (two engine draws).
inline void normal_pair(Rng& rng, double& z0, double& z1) {
  const double u1 = uniform_pos(rng);
  const double u2 = uniform01(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 6.283185307179586476925286766559 * u2;
  z0 = r * std::cos(a);
  z1 = r * std::sin(a);
}

}  // namespace sphd
