#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "haarcorr/linalg.hpp"
#include "haarcorr/mps.hpp"

namespace haarcorr {

// One unit of a disordered solvable PEPS: two unitaries on C^d (x) C^D with
// the bond space split as D = e^2 across the two vertical legs.
//
//   Utilde: (d_in, horizontal-in)            -> (d_mid, e_up-out, e_down-out)
//   Uhat:   (d_mid, e_up-in, e_down-in)      -> (d_out, horizontal-out)
//
// Composite indices are physical-major: rows of Utilde decode as
// m * D + (eu * e + ed), columns as din * D + h, and similarly for Uhat.
struct PepsUnit {
  long d = 2;
  long D = 4;
  long e = 2;
  Eigen::MatrixXcd utilde;
  Eigen::MatrixXcd uhat;
  double unitarity_residual = 0;
  double simplicity1_residual = 0;
  double simplicity2_residual = 0;
};

struct PepsGeometry {
  long x1 = 1;
  long x2 = 0;
  long r1 = 9;
  long r2 = 0;
  long t = 1;
};

struct PepsEnsembleSpec {
  long d = 2;
  long D = 4;
  long v = 1;  // block length in x1
  long m = 6;  // extent in x2
  PepsGeometry geometry;

  void validate() const;
};

// Validates inputs, assembles the unit, and records the unitarity and
// simplicity residuals.
PepsUnit build_unit(const Eigen::MatrixXcd& utilde, const Eigen::MatrixXcd& uhat, long d, long D);

// (intra-unit cut, inter-unit cut) residuals. The first checks that capping
// the physical and horizontal folds collapses the folded unit onto
// d |Omega_out><Omega_in| on the vertical folds; the second checks the
// analogous collapse across the bond between two stacked copies, whose fully
// capped value must be d^2 D^3.
std::pair<double, double> check_simplicity(const PepsUnit& unit);

// Composite one-unit operator on (d, horizontal, e_up, e_down); unitary for
// every parameterized unit.
Eigen::MatrixXcd unit_operator(const PepsUnit& unit);

// Column of m units contracted vertically with periodic boundary; unitary on
// (C^d (x) C^D)^m whenever the units are parameterized.
Eigen::MatrixXcd w_column(const std::vector<PepsUnit>& column);

// Case analysis of the 2D correlation function, including the light-cone
// Heaviside gate in the x2 direction (zero when 4t + x2 mod 2 + 1 - r2 <= 0).
CorrelationCase classify_peps(long x1, long x2, long r1, long r2, long t);

// The reduced diagrams at t = 1 span six unit rows in x2; the D2 template
// carries its operator insertions on interior row 2 (counted from the
// bottom), the single-column D1 template on its top unit.
inline constexpr long kPepsRowsT1 = 6;
inline constexpr long kPepsOperatorRowT1 = 2;

// [row][col] with row 0 the bottom boundary; all units must share (d, D).
using PepsGrid = std::vector<std::vector<PepsUnit>>;

PepsGrid sample_peps_grid(long d, long D, long rows, long cols, RngStream& rng);
std::vector<PepsUnit> sample_peps_column(long d, long D, long rows, RngStream& rng);

// Thermodynamic-limit value of the reduced 2D D2 diagram on the
// 6 x (s + 2) template: A on the operator row's left unit (physical input),
// B on its right unit (physical output), folded-trace caps on every
// boundary, normalized so that A = B = I gives exactly 1.
std::complex<double> correlation_d2_peps(const PepsGrid& units, const Eigen::MatrixXcd& a,
                                         const Eigen::MatrixXcd& b, long s);

// The r1 = 4t + 1 special case: a single 6-unit column with both insertions
// on the top unit; prefactor 1/(d^6 D^7).
std::complex<double> correlation_d1_peps(const std::vector<PepsUnit>& column,
                                         const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace haarcorr
