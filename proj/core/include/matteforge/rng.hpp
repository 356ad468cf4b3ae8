#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace matteforge {

/// Decision categories; each gets its own random substream.
enum class RandomStream : std::uint64_t {
  BaseRotation = 1,  // reserved: foreground rotation is i mod N and draws nothing
  CombineCoin = 2,
  Partner = 3,
  Pair = 4,
  Background = 5,
  Shuffle = 6,
};

/// SplitMix64 finaliser. Used to derive substream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// A seeded substream over std::mt19937_64. Bounded integers use rejection
/// sampling on the raw 64-bit output and reals take the top 53 bits, so draws
/// match across conforming platforms.
class Substream {
 public:
  Substream(std::uint64_t seed, RandomStream stream);

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Uniform double in [0, 1).
  double uniform01();

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_index(i));
      using std::swap;
      swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace matteforge
