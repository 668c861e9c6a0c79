#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "haarcorr/mps.hpp"
#include "haarcorr/mps_moments.hpp"
#include "haarcorr/operators.hpp"
#include "haarcorr/peps.hpp"

namespace haarcorr {

// Sample mean with per-component standard errors. Deterministic under
// (seed, n_samples): streams are pre-assigned by sample index and the
// reduction is a fixed-order pairwise sum, so worker counts cannot change
// the result.
struct McEstimate {
  std::complex<double> mean;
  double stderr_re = 0;
  double stderr_im = 0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  double wall_time_s = 0;
};

struct ComparisonReport {
  MomentResult analytic;
  McEstimate mc;
  double z_score = 0;
  double threshold = 4.0;
  bool pass = false;
};

inline constexpr double kDefaultZThreshold = 4.0;

// Monte Carlo estimate of E[D^k] for the MPS ensemble. D2 geometries draw
// s + 2 independent Haar gates per sample (one per twirled block of the
// reduced chain); the r = 4t + 1 geometry draws one.
McEstimate mc_mps_moment(const MpsEnsembleSpec& spec, int k, const Operator& a, const Operator& b,
                         std::int64_t n_samples, std::uint64_t seed, int n_threads = 0);

// Same for the PEPS templates: 6 x (s + 2) units (two Haar gates each) for
// D2, a 6-unit column for D1.
McEstimate mc_peps_moment(const PepsEnsembleSpec& spec, int k, const Operator& a,
                          const Operator& b, std::int64_t n_samples, std::uint64_t seed,
                          int n_threads = 0);

// Sample average of U^{otimes k} X (U^dag)^{otimes k}; converges to the
// analytic twirl at rate ||X||_F / sqrt(N).
Eigen::MatrixXcd mc_twirl(const Eigen::MatrixXcd& x, int k, int q, std::int64_t n_samples,
                          std::uint64_t seed);

// z-score verdict: componentwise |analytic - mean| / stderr, worst case over
// the real and imaginary parts. A zero stderr passes only on exact
// agreement.
ComparisonReport compare(const MomentResult& analytic, const McEstimate& mc, double threshold);

}  // namespace haarcorr
