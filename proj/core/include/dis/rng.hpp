#pragma once

#include <cstdint>
#include <random>

namespace dis {

/// Seeded random source passed explicitly to every sampling operation.
///
/// Built on std::mt19937_64, whose output sequence is fixed by the standard,
/// and draws doubles/integers with hand-rolled mappings so a given seed gives
/// the same samples on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform();

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform angle in [0, 2*pi).
  double angle();

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

// SplitMix64 finalizer over (seed, stream); used to give every trial its own
// independent, reproducible seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace dis
