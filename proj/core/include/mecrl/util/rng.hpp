#pragma once

#include <cstdint>

namespace mecrl::util {

// Deterministic xoshiro256** generator with hand-rolled distributions.
// The standard <random> distributions are implementation-defined, which
// would break the bit-for-bit reproducibility contract of the simulator,
// so every draw here is spelled out explicitly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53-bit resolution.
  double u01();

  // Uniform in [lo, hi].
  double uniform(double lo, double hi);

  // Exponential with the given mean (mean > 0).
  double exponential(double mean);

  // Uniform integer in [0, n), n >= 1. Lemire multiply-shift reduction.
  std::size_t uniform_index(std::size_t n);

 private:
  std::uint64_t state_[4];
};

// SplitMix64 step; also used to derive independent child seeds.
std::uint64_t splitmix64(std::uint64_t& state);

// Stable seed derivation for sub-streams (episode seeds, agent seeds, ...).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace mecrl::util
