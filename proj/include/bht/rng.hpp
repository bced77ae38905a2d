#pragma once
#include <cstdint>

namespace bht {

// Counter-based generator: draw i of stream s is a pure function of
// (seed, s, i), so chunked or parallel generation reproduces the exact
// sequential output. The mixer is the SplitMix64 finalizer applied to a
// Weyl sequence keyed by (seed, stream).
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) {
    key_ = mix(mix(seed + kGolden) ^ mix(stream * 0xBF58476D1CE4E5B9ULL + kGolden));
  }

  std::uint64_t bits(std::uint64_t counter) const { return mix(key_ + counter * kGolden); }

  // uniform on [0,1) with 53 random bits
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
};

}  // namespace bht
