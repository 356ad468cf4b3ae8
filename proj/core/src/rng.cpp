#include "matteforge/rng.hpp"

#include <limits>

namespace matteforge {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Substream::Substream(std::uint64_t seed, RandomStream stream)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(static_cast<std::uint64_t>(stream)))) {}

std::uint64_t Substream::uniform_index(std::uint64_t n) {
  // Reject the low (2^64 mod n) values so the remainder is unbiased.
  const std::uint64_t threshold = (std::numeric_limits<std::uint64_t>::max() - n + 1) % n;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % n;
  }
}

double Substream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace matteforge
