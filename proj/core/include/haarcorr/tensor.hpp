#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace haarcorr {

struct Leg {
  std::string name;
  long dim = 1;
};

// Dense complex tensor with named legs, row-major over the leg order (first
// leg slowest). The global operator-vector convention is row index first:
// vec(|i><j|) = |i> (x) |j>, i.e. a matrix becomes a tensor with legs
// (row, col) in that order.
class ComplexTensor {
 public:
  ComplexTensor() : legs_{}, data_{1.0} {}
  explicit ComplexTensor(std::vector<Leg> legs);
  ComplexTensor(std::vector<Leg> legs, std::vector<std::complex<double>> data);

  static ComplexTensor scalar(std::complex<double> v);
  static ComplexTensor from_matrix(const Eigen::MatrixXcd& m, const std::string& row_leg,
                                   const std::string& col_leg);
  static ComplexTensor from_vector(const Eigen::VectorXcd& v, const std::string& leg);
  // Identity wire of dimension d between two legs.
  static ComplexTensor delta(const std::string& a, const std::string& b, long dim);

  const std::vector<Leg>& legs() const { return legs_; }
  int rank() const { return static_cast<int>(legs_.size()); }
  long size() const { return static_cast<long>(data_.size()); }
  long dim(const std::string& leg) const;
  int leg_index(const std::string& leg) const;
  bool has_leg(const std::string& leg) const;

  std::vector<std::complex<double>>& data() { return data_; }
  const std::vector<std::complex<double>>& data() const { return data_; }

  std::complex<double>& at(const std::vector<long>& idx);
  std::complex<double> at(const std::vector<long>& idx) const;

  ComplexTensor& rename_leg(const std::string& from, const std::string& to);

  // Reorder legs (a copy with permuted data).
  ComplexTensor transposed(const std::vector<std::string>& order) const;

  // Group legs into (rows, cols) and export as a matrix. Every leg must be
  // listed exactly once.
  Eigen::MatrixXcd to_matrix(const std::vector<std::string>& rows,
                             const std::vector<std::string>& cols) const;
  std::complex<double> to_scalar() const;

  ComplexTensor& operator*=(std::complex<double> c);

  double frobenius_norm() const;

 private:
  std::vector<Leg> legs_;
  std::vector<std::complex<double>> data_;
};

// Contract two tensors over the given (left leg, right leg) pairs. Legs not
// contracted keep their names; the result orders a's free legs before b's.
ComplexTensor contract_pair(const ComplexTensor& a, const ComplexTensor& b,
                            const std::vector<std::pair<std::string, std::string>>& pairs);

// Trace out pairs of legs of a single tensor.
ComplexTensor self_trace(const ComplexTensor& a,
                         const std::vector<std::pair<std::string, std::string>>& pairs);

struct LegRef {
  int tensor = 0;
  std::string leg;
};

// Contract a network of tensors over the given pairings, leaving exactly the
// declared open legs in the requested order. Pairwise order is chosen
// greedily by smallest intermediate size; the result is independent of the
// order up to float rounding.
ComplexTensor contract(std::vector<ComplexTensor> network,
                       const std::vector<std::pair<LegRef, LegRef>>& pairings,
                       const std::vector<LegRef>& open_order);

}  // namespace haarcorr
