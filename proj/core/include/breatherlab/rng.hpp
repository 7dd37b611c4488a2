#pragma once

#include <cstdint>

#include "breatherlab/types.hpp"

namespace breatherlab {

/// Counter-based generator (splitmix64 over seed and counter). Stateless per
/// draw, so streams replicate bit-exactly across platforms and thread counts.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1) for the given counter.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(mix(mix(seed_) ^ mix(counter)) >> 11) * 0x1.0p-53;
  }

  /// Uniform in [-1,1).
  double symmetric(std::uint64_t counter) const { return 2.0 * uniform(counter) - 1.0; }

  cplx complex_symmetric(std::uint64_t counter) const {
    return {symmetric(2 * counter), symmetric(2 * counter + 1)};
  }

private:
  std::uint64_t seed_;
};

}  // namespace breatherlab
