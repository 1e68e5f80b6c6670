#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace fdo {

// The standard distributions are implementation-defined, so every draw in the
// library goes through these helpers to keep seeded runs identical across
// toolchains.
using Rng = std::mt19937_64;

/// Fixed default seed used by the CLI when none is given.
inline constexpr std::uint64_t kDefaultSeed = 20240419;

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lower, upper]; returns lower when the interval is empty.
inline double uniformIn(Rng& rng, double lower, double upper) {
  return lower + (upper - lower) * uniform01(rng);
}

/// Uniform index in [0, n) by rejection (n > 0).
inline std::size_t uniformIndex(Rng& rng, std::size_t n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

/// Fisher-Yates shuffle driven by uniformIndex.
template <typename Container>
void shuffle(Container& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = uniformIndex(rng, i);
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

/// SplitMix64 finalizer; derives independent child seeds (per fold, per run).
inline std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace fdo
