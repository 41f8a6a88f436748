#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace rvcal {

/// SplitMix64 finalizer; used to derive child seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Explicitly seeded generator. Every random quantity in a trial is drawn
/// from an Rng derived from the trial seed; there is no global state.
///
/// Floating-point draws are built from raw 64-bit words rather than the
/// standard distributions so streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  /// Child generator for sub-stream `stream`. Depends only on this
  /// generator's seed, not on how many values have been drawn from it.
  Rng split(std::uint64_t stream) const;

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform();
  /// Uniform integer in [0, n). Requires n > 0.
  std::size_t index(std::size_t n);
  double normal();
  double exponential();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace rvcal
