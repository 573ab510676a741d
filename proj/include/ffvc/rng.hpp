#pragma once

#include <cstdint>
#include <string_view>

namespace ffvc {

/// SplitMix64 (Steele, Lea, Flood 2014). Output i of a stream seeded with s is
/// mix(s + (i + 1) * golden_gamma), so streams are counter-based and any
/// (seed, index) pair can be replayed directly.
class SplitMix64 {
 public:
  static constexpr std::string_view kAlgorithm = "splitmix64";
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() noexcept { return mix(state_ += kGamma); }

  /// Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
    while (true) {
      const std::uint64_t r = next();
      if (r >= limit) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

/// Seed of trial `index` under master seed `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return SplitMix64::mix(master ^ SplitMix64::mix(index + SplitMix64::kGamma));
}

}  // namespace ffvc
