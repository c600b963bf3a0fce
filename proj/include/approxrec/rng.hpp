#pragma once

#include <cstdint>

namespace approxrec {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so sampling order never affects the result.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const {
    return mix(key_ + mix(counter ^ 0xd1b54a32d192ed03ULL));
  }

  // Uniform in [0, 1) with 53 bits of resolution.
  constexpr double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  constexpr bool bernoulli(std::uint64_t counter, double prob) const {
    return uniform(counter) < prob;
  }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
};

// Stream tags used across the library.
namespace streams {
inline constexpr std::uint64_t kBadEdge = 1;
inline constexpr std::uint64_t kBadNode = 2;
inline constexpr std::uint64_t kTruth = 3;
inline constexpr std::uint64_t kAdversary = 4;
}  // namespace streams

}  // namespace approxrec
