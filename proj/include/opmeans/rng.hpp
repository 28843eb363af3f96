#pragma once

#include <cstdint>

namespace opmeans {

// Counter-based generator, stream version 1.
//
//   word(k) = mix64(seed + (k + 1) * 0x9E3779B97F4A7C15)   (mod 2^64)
//
// where mix64 is the SplitMix64 finalizer
//   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//   z ^= z >> 27; z *= 0x94D049BB133111EB;
//   z ^= z >> 31.
// The k-th call to next_u64() returns word(k). Doubles take the top 53 bits.
// Child streams are derived by hashing (seed, index), never by sharing state,
// so instance i of a run can be regenerated from the run seed alone.
class Rng {
 public:
  static constexpr int kStreamVersion = 1;

  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

  std::uint64_t next_u64();
  // [0, 1), multiples of 2^-53.
  double uniform();
  // (0, 1], multiples of 2^-53.
  double uniform_open_low();
  double uniform(double lo, double hi);
  // Box-Muller, one variate per call (two words consumed).
  double normal();

  // Independent stream keyed by (seed, index); does not advance this one.
  Rng child(std::uint64_t index) const;

  static std::uint64_t mix64(std::uint64_t z);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace opmeans
