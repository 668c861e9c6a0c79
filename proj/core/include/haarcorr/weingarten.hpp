#pragma once

#include <vector>

#include <Eigen/Dense>

#include "haarcorr/perm.hpp"
#include "haarcorr/rational.hpp"

namespace haarcorr {

// Gram matrix of the permutation operators on (C^q)^{otimes k}:
// entries[s][t] = q^{#(sigma_s sigma_t^{-1})} under the shared lexicographic
// enumeration. Symmetric, diagonal q^k.
struct GramMatrix {
  int k = 0;
  long q = 0;
  std::vector<std::vector<Int>> entries;
};

GramMatrix gram(int k, long q);

// Exact Weingarten values for fixed (k, q), one value per conjugacy class.
// For k <= q this is the inverse of the Gram matrix; for k > q the Gram
// matrix is singular and the values come from its Moore-Penrose
// pseudo-inverse, evaluated exactly on the class-collapsed system. Both
// cases are handled by one polynomial functional calculus: h(G) with
// h(lambda) = 1/lambda on the nonzero spectrum and h(0) = 0.
class WeingartenTable {
 public:
  WeingartenTable(int k, long q);

  int k() const { return k_; }
  long q() const { return q_; }
  const std::vector<CycleType>& classes() const { return classes_; }
  const std::vector<Rat>& values() const { return values_; }

  const Rat& value(const CycleType& type) const;
  const Rat& operator()(const Permutation& pi) const;
  // Wg of the class with the given number-of-cycles-resolved type index.
  const Rat& value_at(int class_index) const { return values_[class_index]; }
  int class_index(const CycleType& type) const;

 private:
  int k_;
  long q_;
  std::vector<CycleType> classes_;
  std::vector<Rat> values_;
};

inline constexpr int kMaxWeingartenDegree = 6;

Rat weingarten(const Permutation& pi, long q);
Rat weingarten(const CycleType& type, int k, long q);

// Class index of sigma_i sigma_j^{-1} for every ordinal pair, precomputed for
// the hot k!^2 sums of the moment modules.
class PairClassTable {
 public:
  PairClassTable(int k);
  int k() const { return k_; }
  std::uint64_t size() const { return n_; }
  int operator()(std::uint64_t i, std::uint64_t j) const { return cls_[i * n_ + j]; }
  const std::vector<CycleType>& classes() const { return classes_; }
  // Cycle count of sigma_i sigma_j^{-1}.
  int cycles(std::uint64_t i, std::uint64_t j) const { return n_cycles_[cls_[i * n_ + j]]; }
  int cycles_of_class(int c) const { return n_cycles_[c]; }
  int class_of(std::uint64_t i) const { return cls_[i * n_ + 0]; }  // sigma_j = identity

 private:
  int k_;
  std::uint64_t n_;
  std::vector<CycleType> classes_;
  std::vector<int> n_cycles_;
  std::vector<std::uint8_t> cls_;
};

// k-fold twirl: sum_{sigma,tau} Wg(sigma tau^{-1}, q) P_sigma tr[X P_tau^T].
// Projects X onto the commutant of U^{otimes k}; idempotent and
// trace-preserving.
Eigen::MatrixXcd twirl(const Eigen::MatrixXcd& X, int k, int q);

}  // namespace haarcorr
