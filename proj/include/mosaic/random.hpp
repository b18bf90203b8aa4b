#pragma once

#include <algorithm>
#include <cstdint>
#include <random>

namespace mosaic {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of the substream keyed by (seed, a, b). Every independent piece of
/// generation (one mosaic, one mosaic pair, the rewiring pass, ...) draws from
/// its own substream so results do not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept;

inline Rng make_rng(std::uint64_t seed) { return Rng{seed}; }

/// Uniform integer in [lo, hi].
template <class Int>
Int uniform_int(Rng& rng, Int lo, Int hi) {
  return std::uniform_int_distribution<Int>{lo, hi}(rng);
}

/// Uniform double in [lo, hi); hi itself is never returned.
double uniform_real(Rng& rng, double lo, double hi);

inline bool bernoulli(Rng& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return std::bernoulli_distribution{p}(rng);
}

inline std::uint64_t poisson(Rng& rng, double mean) {
  if (mean <= 0.0) return 0;
  return std::poisson_distribution<std::uint64_t>{mean}(rng);
}

template <class It>
void shuffle(It first, It last, Rng& rng) {
  std::shuffle(first, last, rng);
}

}  // namespace mosaic
