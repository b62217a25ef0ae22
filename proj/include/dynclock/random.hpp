#pragma once

#include <cstdint>
#include <random>

namespace dynclock {

// std::mt19937_64 output is fully specified; the distributions below avoid
// std::uniform_int_distribution, whose mapping is implementation-defined, so
// seeded runs reproduce byte-for-byte everywhere.

/// Uniform draw from [lo, hi], inclusive.
inline std::uint64_t uniform_u64(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  std::uint64_t span = hi - lo + 1;
  if (span == 0) return rng();  // full range
  std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + x % span;
}

inline bool chance(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

/// Stateless mixer for deriving per-round seeds (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace dynclock
