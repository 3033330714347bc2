#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace rrtcut {

/// SplitMix64 output finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based random stream: the i-th output is mix64(key + i * gamma).
///
/// Streams are cheap to create and fully determined by their key, so every
/// Monte Carlo replicate owns an independent stream derived from
/// (seed, replicate index) with no shared state between workers.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit RandomStream(std::uint64_t key) noexcept : key_(key) {}

  /// Stream for replicate `index` of an experiment seeded with `seed`.
  static RandomStream for_replicate(std::uint64_t seed, std::uint64_t index) noexcept {
    return RandomStream(mix64(mix64(seed) + kGamma * (index + 1)));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return mix64(key_ + kGamma * ++counter_); }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t draws() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Uniform integer in [lo, hi] (inclusive).
template <class Int>
Int uniform_int(RandomStream& rng, Int lo, Int hi) {
  return std::uniform_int_distribution<Int>(lo, hi)(rng);
}

}  // namespace rrtcut
