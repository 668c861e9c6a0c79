#pragma once

#include <complex>
#include <cstdint>

namespace haarcorr {

// Counter-based stream: identical (seed, stream) reproduces identical draws,
// and streams are independent enough for sample-parallel Monte Carlo where
// worker counts must not affect results.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64();
  double uniform();           // (0, 1]
  double normal();            // standard Gaussian, Box-Muller
  std::complex<double> complex_normal();  // re, im independent N(0, 1)

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace haarcorr
