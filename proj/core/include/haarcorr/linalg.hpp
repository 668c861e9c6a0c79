#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "haarcorr/rng.hpp"

namespace haarcorr {

// Unitary with its construction-time residual; throws if the matrix is not
// unitary to 1e-12.
struct UnitaryMatrix {
  long q = 0;
  Eigen::MatrixXcd m;

  UnitaryMatrix() = default;
  explicit UnitaryMatrix(Eigen::MatrixXcd mat);
};

double unitarity_residual(const Eigen::MatrixXcd& u);

// Haar sample on U(q): complex Ginibre matrix, QR, then column phases fixed
// so the triangular factor has positive real diagonal. Deterministic given
// the stream.
UnitaryMatrix haar_unitary(long q, RngStream& rng);

// Top `count` eigenvalues by magnitude; ties broken by phase (descending
// magnitude, then ascending argument). Dense solve, dimension <= 4096.
std::vector<std::complex<double>> leading_eigs(const Eigen::MatrixXcd& m, int count);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

double max_abs(const Eigen::MatrixXcd& m);

}  // namespace haarcorr
