#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "haarcorr/linalg.hpp"

namespace haarcorr {

// Case split of the two-point equal-time correlation function C(x, r, t) for
// traceless operator insertions.
enum class CorrelationCase {
  kZeroEvenX,
  kZeroEvenR,
  kZeroInsideLightcone,
  kBoundaryD1,  // r = 4t + 1
  kGenericD2,   // r > 4t + 1
};

CorrelationCase classify(long x, long r, long t);

// Number of bulk gates in the reduced D2 chain: s = (r - 4t - 3) / 2.
long chain_length_s(long r, long t);

struct MpsGeometry {
  long x = 1;
  long r = 5;
  long t = 1;
};

// Ensemble description: d (physical), D (bond), v distinct unit gates on
// U(dD), 2v-site shift invariance.
struct MpsEnsembleSpec {
  long d = 2;
  long D = 2;
  long v = 1;
  MpsGeometry geometry;

  void validate() const;
};

// One period of a disordered solvable MPS: v unitaries on C^d (x) C^D with
// the composite index (i, a) -> i * D + a.
struct DisorderedMps {
  long d = 2;
  long D = 2;
  std::vector<Eigen::MatrixXcd> units;

  long unit_dim() const { return d * D; }
  void validate() const;

  static DisorderedMps sample(long d, long D, long v, RngStream& rng);
};

// Folded single-gate transfer matrix E = (1/d) sum_{i1,i2} U_{i1,i2} (x)
// conj(U_{i1,i2}) on the doubled bond space (D^2 x D^2, composite index
// m * D + n). Leading eigenvalue 1 with the maximally entangled pair as
// left/right fixed points.
Eigen::MatrixXcd transfer_matrix(const Eigen::MatrixXcd& u, long d, long D);

// Product of the per-unit transfer matrices over one period.
Eigen::MatrixXcd block_transfer(const DisorderedMps& mps);

// Normalized fixed-point vector (1/sqrt(D)) sum_i |ii> on the doubled bond
// space.
Eigen::VectorXcd fixed_point_vector(long D);

// Thermodynamic-limit value of the reduced D2 diagram: boundary caps, an
// A-decorated gate, s bulk gates, and a B-decorated gate, normalized so that
// A = B = I gives exactly 1. Gates are taken cyclically from the period when
// v < s + 2.
std::complex<double> correlation_d2(const DisorderedMps& mps, const Eigen::MatrixXcd& a,
                                    const Eigen::MatrixXcd& b, long s);

// The r = 4t + 1 diagram: a single gate carrying both insertions, prefactor
// 1/(dD).
std::complex<double> correlation_d1(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& a,
                                    const Eigen::MatrixXcd& b, long d, long D);

// Exact finite-size value tr(G F^{w-1}) / tr(F^w) with G the A/B-decorated
// period and F the block transfer matrix; the denominator is the finite
// chain's norm. Converges to correlation_d2 geometrically at the subleading
// eigenvalue of F. Requires v >= s + 2 so the decorated window fits inside
// one period.
std::complex<double> finite_n_correlation(const DisorderedMps& mps, const Eigen::MatrixXcd& a,
                                          const Eigen::MatrixXcd& b, long s, long w);

}  // namespace haarcorr
