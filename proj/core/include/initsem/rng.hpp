#pragma once

#include <cstdint>

namespace initsem {

/// SplitMix64 (Steele, Lea and Flood). Every random choice in the library is
/// drawn from this generator so that ports in other languages can replay the
/// same sequences from the same 64-bit seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection of the biased low range; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

  /// Independent child stream, used to decorrelate suite sections.
  SplitMix64 fork(std::uint64_t salt) { return SplitMix64(next() ^ (salt * 0xd1b54a32d192ed03ULL)); }

 private:
  std::uint64_t state_;
};

}  // namespace initsem
