#include "opmeans/rng.hpp"

#include <cmath>
#include <numbers>

namespace opmeans {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;
}  // namespace

std::uint64_t Rng::mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

std::uint64_t Rng::next_u64() {
  ++counter_;
  return mix64(seed_ + counter_ * kGolden);
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * kTwoPow53Inv; }

double Rng::uniform_open_low() {
  return static_cast<double>((next_u64() >> 11) + 1) * kTwoPow53Inv;
}

double Rng::uniform(double lo, double hi) {
  const double u = uniform();
  const double x = lo + (hi - lo) * u;
  return x > hi ? hi : x;
}

double Rng::normal() {
  const double u1 = uniform_open_low();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Rng Rng::child(std::uint64_t index) const {
  return Rng(mix64(mix64(seed_ ^ 0x6A09E667F3BCC909ULL) + (index + 1) * kGolden));
}

}  // namespace opmeans
