#pragma once

// Reproducible random number generation. SplitMix64 is fully specified by
// its update constants, so streams are identical across platforms and
// compilers; simulation code derives one independent stream per work block.

#include <cstdint>

#include "confid/special.hpp"

namespace confid {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0,1): 53-bit mantissa, centered so that
  // 0 and 1 are never returned.
  double uniform01() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal(double mean, double sd) {
    return mean + sd * normal_quantile(uniform01());
  }

 private:
  std::uint64_t state_;
};

// Deterministic sub-seed for work block `index` of a run seeded by `seed`.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (index * 0x9e3779b97f4a7c15ull + 0x243f6a8885a308d3ull));
  return g.next();
}

}  // namespace confid
