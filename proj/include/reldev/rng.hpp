#pragma once

#include <cstdint>

// Counter-based random streams. Every consumer of randomness derives its own
// stream from (master_seed, stream_index), so work can be partitioned across
// threads in any order and still produce bit-identical results.

namespace reldev::rng {

// 64-bit avalanche finalizer (the murmur3 fmix64 constants). Bijective.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 33;
  z *= 0xff51afd7ed558ccdULL;
  z ^= z >> 33;
  z *= 0xc4ceb9fe1a85ec53ULL;
  z ^= z >> 33;
  return z;
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits; 1.0 is never returned.
  double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Stream k of a master seed. Streams with distinct indices are de-correlated
// by the finalizer; the same (seed, index) pair always yields the same draws.
inline SplitMix64 stream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept {
  return SplitMix64(mix64(master_seed + 0x9e3779b97f4a7c15ULL * (stream_index + 1)));
}

}  // namespace reldev::rng
