#pragma once

// PCG32 (PCG-XSH-RR, 64-bit state, 32-bit output, selectable stream).
//
// Counts produced by the sampler are bit-reproducible across platforms
// because both the generator and the double conversion are defined here
// rather than taken from <random> distributions, whose algorithms are
// implementation-defined.

#include <cstdint>

namespace nuqsim {

/// Stream selectors. Different domains never share a sequence for the same seed.
enum class SeedDomain : std::uint64_t {
  kSampling = 0x5a3c9e1bd2f04a67ULL,
  kOptimizer = 0x1f6d3b8c07e9a425ULL,
};

class Pcg32 {
 public:
  using result_type = std::uint32_t;

  Pcg32(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return 0xffffffffu; }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits (two draws, high word first).
  double uniform01();

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
};

/// Per-point stream: the seed is combined with the point index by XOR and the
/// domain picks the PCG stream.
inline Pcg32 make_stream(std::uint64_t seed, std::uint64_t index, SeedDomain domain) {
  return Pcg32(seed ^ index, static_cast<std::uint64_t>(domain));
}

}  // namespace nuqsim
