#pragma once

#include <cstdint>

namespace ergo {

/// SplitMix64: the fixed-increment splittable generator of Steele, Lea &
/// Flood (2014) in Vigna's public-domain formulation. State advances by the
/// golden-ratio increment and each output is a full 64-bit mix of the
/// counter, so disjoint streams can be derived by keying the counter.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  /// Stream key for (base_seed, index); used to give each simulation
  /// replicate its own deterministic stream.
  static std::uint64_t derive_stream(std::uint64_t base_seed, std::uint64_t index) {
    return mix(base_seed + kGolden * (index + 1));
  }

  std::uint64_t next() {
    state_ += kGolden;
    return mix(state_);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe as a log() argument.
  double uniform_open() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  std::uint64_t state_;
};

/// Standard normal draws via Box-Muller on top of SplitMix64. The pair
/// member is cached, so one stream yields a reproducible scalar sequence.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

  double next();

 private:
  SplitMix64 rng_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace ergo
