#include "mosaic/random.hpp"

#include <cmath>

namespace mosaic {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(mix64(mix64(seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

double uniform_real(Rng& rng, double lo, double hi) {
  double x = std::uniform_real_distribution<double>{lo, hi}(rng);
  // libstdc++ can round up to hi for some (lo, hi)
  if (x >= hi) x = std::nextafter(hi, lo);
  return x;
}

}  // namespace mosaic
