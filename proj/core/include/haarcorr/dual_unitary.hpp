#pragma once

#include <Eigen/Dense>

#include "haarcorr/linalg.hpp"
#include "haarcorr/rng.hpp"

namespace haarcorr {

// Max-norm deviations from the three defining identities of a dual-unitary
// gate: ordinary (temporal) unitarity and the two space-time reshuffled
// unitarity conditions.
struct DualResiduals {
  double temporal = 0;
  double spatial1 = 0;
  double spatial2 = 0;
  double max() const { return std::max(temporal, std::max(spatial1, spatial2)); }
};

struct DualGate {
  int d = 2;
  Eigen::MatrixXcd m;  // d^2 x d^2
  DualResiduals residuals;
};

// Parameters of the complete d = 2 family:
// exp(i phi) (u_+ (x) u_-) V(J) (v_- (x) v_+) with SU(2) factors.
struct DualGateParams {
  double phi = 0;
  double J = 0;
  Eigen::Matrix2cd u_plus, u_minus, v_plus, v_minus;

  static DualGateParams identity_at(double phi, double J);
  static DualGateParams random(RngStream& rng);
};

// V(J) = exp[-i(pi/4 XX + pi/4 YY + J ZZ)], in closed form.
Eigen::Matrix4cd v_gate(double J);

DualGate build_d2(const DualGateParams& params);

// Residuals for an arbitrary candidate on C^d (x) C^d. The spatial
// reshuffle regroups legs so space and time swap roles:
// R[(o2,i2),(o1,i1)] = U[(o1,o2),(i1,i2)].
DualResiduals check_dual(const Eigen::MatrixXcd& u, int d);

Eigen::MatrixXcd spatial_reshuffle(const Eigen::MatrixXcd& u, int d);

// Heralded operator maps: M+(a) = (1/d) tr_1[U^dag (a (x) I) U] and
// M-(a) = (1/d) tr_2[U^dag (I (x) a) U]. Unital and trace-preserving for
// dual-unitary gates.
Eigen::MatrixXcd m_plus(const Eigen::MatrixXcd& a, const DualGate& gate);
Eigen::MatrixXcd m_minus(const Eigen::MatrixXcd& a, const DualGate& gate);

// Iterates m_plus (plus = true) or m_minus `steps` times; steps = 0 returns a.
Eigen::MatrixXcd evolve_operator(Eigen::MatrixXcd a, const DualGate& gate, int steps,
                                 bool plus = true);

}  // namespace haarcorr
