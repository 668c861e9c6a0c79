#include "haarcorr/dual_unitary.hpp"

#include <cmath>
#include <stdexcept>

namespace haarcorr {

namespace {

void check_su2(const Eigen::Matrix2cd& u, const char* name) {
  if (unitarity_residual(u) > 1e-12)
    throw std::invalid_argument(std::string("build_d2: factor ") + name + " is not unitary");
  if (std::abs(u.determinant() - 1.0) > 1e-12)
    throw std::invalid_argument(std::string("build_d2: factor ") + name +
                                " has determinant != 1 (not SU(2))");
}

}  // namespace

DualGateParams DualGateParams::identity_at(double phi, double J) {
  DualGateParams p;
  p.phi = phi;
  p.J = J;
  p.u_plus = p.u_minus = p.v_plus = p.v_minus = Eigen::Matrix2cd::Identity();
  return p;
}

DualGateParams DualGateParams::random(RngStream& rng) {
  DualGateParams p;
  p.phi = 2.0 * M_PI * rng.uniform();
  p.J = 2.0 * M_PI * rng.uniform();
  auto su2 = [&rng]() {
    Eigen::Matrix2cd u = haar_unitary(2, rng).m;
    std::complex<double> det = u.determinant();
    // Divide out a square root of the phase to land in SU(2).
    u /= std::sqrt(det);
    return u;
  };
  p.u_plus = su2();
  p.u_minus = su2();
  p.v_plus = su2();
  p.v_minus = su2();
  return p;
}

Eigen::Matrix4cd v_gate(double J) {
  // Basis |00>, |01>, |10>, |11>. The XX+YY part acts on span{|01>, |10>} as
  // pi/2 times a swap-like sigma_x, so its exponential is -i times that swap;
  // the ZZ part contributes commuting diagonal phases.
  using namespace std::complex_literals;
  Eigen::Matrix4cd v = Eigen::Matrix4cd::Zero();
  std::complex<double> em = std::exp(-1i * J);
  std::complex<double> ep = std::exp(1i * J);
  v(0, 0) = em;
  v(3, 3) = em;
  v(2, 1) = -1i * ep;
  v(1, 2) = -1i * ep;
  return v;
}

DualGate build_d2(const DualGateParams& p) {
  check_su2(p.u_plus, "u+");
  check_su2(p.u_minus, "u-");
  check_su2(p.v_plus, "v+");
  check_su2(p.v_minus, "v-");
  using namespace std::complex_literals;
  Eigen::MatrixXcd m = std::exp(1i * p.phi) * kron(p.u_plus, p.u_minus) * v_gate(p.J) *
                       kron(p.v_minus, p.v_plus);
  DualGate g;
  g.d = 2;
  g.m = std::move(m);
  g.residuals = check_dual(g.m, 2);
  return g;
}

Eigen::MatrixXcd spatial_reshuffle(const Eigen::MatrixXcd& u, int d) {
  Eigen::MatrixXcd r(d * d, d * d);
  for (int o1 = 0; o1 < d; ++o1)
    for (int o2 = 0; o2 < d; ++o2)
      for (int i1 = 0; i1 < d; ++i1)
        for (int i2 = 0; i2 < d; ++i2) r(o2 * d + i2, o1 * d + i1) = u(o1 * d + o2, i1 * d + i2);
  return r;
}

DualResiduals check_dual(const Eigen::MatrixXcd& u, int d) {
  if (u.rows() != u.cols()) throw std::invalid_argument("check_dual: matrix not square");
  if (u.rows() != static_cast<long>(d) * d)
    throw std::invalid_argument("check_dual: dimension is not d^2 for the given d");
  DualResiduals res;
  res.temporal = unitarity_residual(u);
  Eigen::MatrixXcd r = spatial_reshuffle(u, d);
  Eigen::MatrixXcd g = r.adjoint() * r;
  g.diagonal().array() -= 1.0;
  res.spatial1 = g.cwiseAbs().maxCoeff();
  Eigen::MatrixXcd h = r * r.adjoint();
  h.diagonal().array() -= 1.0;
  res.spatial2 = h.cwiseAbs().maxCoeff();
  return res;
}

namespace {

Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& m, int d, bool first_site) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  if (first_site) {
    for (int i2 = 0; i2 < d; ++i2)
      for (int j2 = 0; j2 < d; ++j2) {
        std::complex<double> acc = 0;
        for (int i1 = 0; i1 < d; ++i1) acc += m(i1 * d + i2, i1 * d + j2);
        out(i2, j2) = acc;
      }
  } else {
    for (int i1 = 0; i1 < d; ++i1)
      for (int j1 = 0; j1 < d; ++j1) {
        std::complex<double> acc = 0;
        for (int i2 = 0; i2 < d; ++i2) acc += m(i1 * d + i2, j1 * d + i2);
        out(i1, j1) = acc;
      }
  }
  return out;
}

}  // namespace

Eigen::MatrixXcd m_plus(const Eigen::MatrixXcd& a, const DualGate& gate) {
  int d = gate.d;
  if (a.rows() != d || a.cols() != d) throw std::invalid_argument("m_plus: operator dimension mismatch");
  Eigen::MatrixXcd lifted = kron(a, Eigen::MatrixXcd::Identity(d, d));
  Eigen::MatrixXcd m = gate.m.adjoint() * lifted * gate.m;
  return partial_trace(m, d, /*first_site=*/true) / static_cast<double>(d);
}

Eigen::MatrixXcd m_minus(const Eigen::MatrixXcd& a, const DualGate& gate) {
  int d = gate.d;
  if (a.rows() != d || a.cols() != d) throw std::invalid_argument("m_minus: operator dimension mismatch");
  Eigen::MatrixXcd lifted = kron(Eigen::MatrixXcd::Identity(d, d), a);
  Eigen::MatrixXcd m = gate.m.adjoint() * lifted * gate.m;
  return partial_trace(m, d, /*first_site=*/false) / static_cast<double>(d);
}

Eigen::MatrixXcd evolve_operator(Eigen::MatrixXcd a, const DualGate& gate, int steps, bool plus) {
  if (steps < 0) throw std::invalid_argument("evolve_operator: steps must be >= 0");
  for (int i = 0; i < steps; ++i) a = plus ? m_plus(a, gate) : m_minus(a, gate);
  return a;
}

}  // namespace haarcorr
