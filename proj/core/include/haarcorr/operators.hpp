#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "haarcorr/perm.hpp"
#include "haarcorr/rational.hpp"

namespace haarcorr {

// A local operator on C^d. Operators with exact (Gaussian-rational) entries
// carry them alongside the float matrix; the moment modules use the exact
// data when present and fall back to doubles otherwise.
struct Operator {
  Eigen::MatrixXcd m;
  std::optional<std::vector<std::vector<CRat>>> exact;  // row-major, d x d

  long dim() const { return m.rows(); }
  bool has_exact() const { return exact.has_value(); }

  static Operator identity(long d);
  static Operator pauli(char axis);  // 'x', 'y', 'z' on C^2
  // Generalized Gell-Mann elements on C^d with integer entries (unnormalized):
  // i < j: E_ij + E_ji; i > j: -i(E_ji - E_ij); i == j > 1: the traceless
  // diagonal element sum_{m<i} E_mm - (i-1) E_ii. 1-based indices.
  static Operator gellmann(long d, int i, int j);
  static Operator from_exact(std::vector<std::vector<CRat>> entries);
  static Operator from_matrix(Eigen::MatrixXcd m);

  // Named preset or inline JSON handled by the CLI; this resolves presets.
  static Operator preset(const std::string& name, long d);
};

// tr(A), tr(A^2), ..., tr(A^kmax).
std::vector<std::complex<double>> power_traces(const Eigen::MatrixXcd& a, int kmax);
std::vector<CRat> exact_power_traces(const std::vector<std::vector<CRat>>& a, int kmax);

// tr(P_pi A^{otimes k}) = product over cycles of pi of tr(A^len). Equal for
// pi and pi^{-1}, so it also evaluates tr((P_pi)^T A^{otimes k}).
std::complex<double> cycle_trace(const std::vector<std::complex<double>>& ptraces,
                                 const Permutation& pi);
CRat cycle_trace_exact(const std::vector<CRat>& ptraces, const Permutation& pi);

}  // namespace haarcorr
