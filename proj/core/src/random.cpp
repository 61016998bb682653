#include "gabkron/random.hpp"

#include "gabkron/errors.hpp"

namespace gabkron {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RandomSource::uniform(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("uniform: zero bound");
  // Rejection sampling on the top of the range keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x < limit) return x % bound;
  }
}

SplitMix64 SplitMix64::from_seed(std::span<const std::uint8_t> seed) {
  std::uint64_t state = mix64(kGolden ^ seed.size());
  for (std::size_t off = 0; off < seed.size(); off += 8) {
    std::uint64_t chunk = 0;
    for (std::size_t b = 0; b < 8 && off + b < seed.size(); ++b) {
      chunk |= std::uint64_t{seed[off + b]} << (8 * b);
    }
    state = mix64((state + kGolden) ^ chunk);
  }
  return SplitMix64(state);
}

std::uint64_t SplitMix64::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

std::uint64_t SystemRandom::next_u64() {
  static_assert(sizeof(std::random_device::result_type) == 4);
  const std::uint64_t hi = device_();
  const std::uint64_t lo = device_();
  return (hi << 32) | lo;
}

}  // namespace gabkron
