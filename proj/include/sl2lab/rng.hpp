#pragma once

// Deterministic per-trial random streams. Each trial draws from its own
// generator derived from (seed, trial), so results do not depend on how
// trials are scheduled across threads.

#include <cstdint>
#include <random>

#include "sl2lab/errors.hpp"

namespace sl2lab {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

inline Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return Rng(splitmix64(splitmix64(seed) ^ (trial * 0xd1b54a32d192ed03ULL + 1)));
}

// Uniform on [0, n) by rejection; unlike std::uniform_int_distribution the
// output is the same on every standard library.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n == 0) throw DomainError("uniform_below(0)");
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  std::uint64_t x;
  do {
    x = rng();
  } while (x < threshold);
  return x % n;
}

// Uniform on [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace sl2lab
