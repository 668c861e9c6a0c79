#include "haarcorr/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace haarcorr {

double unitarity_residual(const Eigen::MatrixXcd& u) {
  Eigen::MatrixXcd g = u.adjoint() * u;
  g.diagonal().array() -= 1.0;
  double r1 = g.cwiseAbs().maxCoeff();
  Eigen::MatrixXcd h = u * u.adjoint();
  h.diagonal().array() -= 1.0;
  return std::max(r1, h.cwiseAbs().maxCoeff());
}

UnitaryMatrix::UnitaryMatrix(Eigen::MatrixXcd mat) : q(mat.rows()), m(std::move(mat)) {
  if (m.rows() != m.cols()) throw std::invalid_argument("UnitaryMatrix: not square");
  if (unitarity_residual(m) > 1e-12)
    throw std::invalid_argument("UnitaryMatrix: unitarity residual exceeds 1e-12");
}

UnitaryMatrix haar_unitary(long q, RngStream& rng) {
  if (q < 1) throw std::invalid_argument("haar_unitary: q must be >= 1");
  Eigen::MatrixXcd a(q, q);
  for (long i = 0; i < q; ++i)
    for (long j = 0; j < q; ++j) a(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd Q = qr.householderQ();
  Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long j = 0; j < q; ++j) {
    std::complex<double> r = R(j, j);
    double mag = std::abs(r);
    std::complex<double> phase = mag > 0 ? r / mag : 1.0;
    Q.col(j) *= phase;
  }
  return UnitaryMatrix(std::move(Q));
}

std::vector<std::complex<double>> leading_eigs(const Eigen::MatrixXcd& m, int count) {
  if (m.rows() != m.cols()) throw std::invalid_argument("leading_eigs: matrix not square");
  if (m.rows() > 4096) throw std::invalid_argument("leading_eigs: dimension exceeds 4096");
  if (count < 1) throw std::invalid_argument("leading_eigs: count must be >= 1");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw std::runtime_error("leading_eigs: eigensolver failed");
  std::vector<std::complex<double>> ev(es.eigenvalues().data(),
                                       es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
    double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma > mb;
    return std::arg(a) < std::arg(b);
  });
  ev.resize(std::min<std::size_t>(ev.size(), static_cast<std::size_t>(count)));
  return ev;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace haarcorr
