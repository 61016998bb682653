#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace gabkron {

using Bytes = std::vector<std::uint8_t>;

/// Source of 64-bit random words. Key generation and encryption draw all of
/// their randomness through this interface so a seeded source makes every
/// artifact reproducible.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  virtual std::uint64_t next_u64() = 0;

  /// Uniform integer in [0, bound); bound must be nonzero.
  std::uint64_t uniform(std::uint64_t bound);

  bool coin() { return (next_u64() >> 63) != 0; }
};

/// SplitMix64 (Steele, Lea, Flood). Not a cryptographic generator; used for
/// reproducible test vectors and --seed runs.
class SplitMix64 final : public RandomSource {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  /// Absorbs an arbitrary byte string into the 64-bit state.
  static SplitMix64 from_seed(std::span<const std::uint8_t> seed);

  std::uint64_t next_u64() override;

 private:
  std::uint64_t state_;
};

/// OS entropy via std::random_device.
class SystemRandom final : public RandomSource {
 public:
  std::uint64_t next_u64() override;

 private:
  std::random_device device_;
};

}  // namespace gabkron
