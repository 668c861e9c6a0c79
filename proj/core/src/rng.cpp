#include "haarcorr/rng.hpp"

#include <cmath>
#include <numbers>

namespace haarcorr {

namespace {

// SplitMix64 finalizer; full-period avalanche on the 64-bit counter word.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RngStream::next_u64() {
  std::uint64_t key = mix64(seed_ ^ mix64(stream_ ^ 0xa5a5a5a5a5a5a5a5ull));
  return mix64(key + 0x9e3779b97f4a7c15ull * ++counter_);
}

double RngStream::uniform() {
  // 53-bit mantissa, mapped to (0, 1] so log() below is safe.
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

std::complex<double> RngStream::complex_normal() { return {normal(), normal()}; }

}  // namespace haarcorr
