#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "haarcorr/rational.hpp"

namespace haarcorr {

// Element of S_k in one-line notation. images[i] is the (0-based) image of
// point i, so the identity is (0, 1, ..., k-1).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int degree);
  // Cycle shorthand for tests and docs, e.g. from_cycle(3, {0, 1}) = (0 1).
  static Permutation from_cycle(int degree, const std::vector<int>& cycle);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }
  const std::vector<int>& images() const { return img_; }

  Permutation inverse() const;
  bool is_identity() const;

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }
  friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

 private:
  std::vector<int> img_;
};

// (sigma . tau)(i) = sigma(tau(i)). Throws on degree mismatch.
Permutation compose(const Permutation& sigma, const Permutation& tau);

// Number of disjoint cycles, fixed points included.
int cycle_count(const Permutation& p);

// Cycle counts of products come up in every Gram/tensor entry; these avoid
// materializing the composition.
int cycle_count_compose(const Permutation& sigma, const Permutation& tau);
int cycle_count_compose_inv(const Permutation& sigma, const Permutation& tau);

// Weakly decreasing cycle lengths summing to the degree. Labels a conjugacy
// class of S_k.
using CycleType = std::vector<int>;

CycleType cycle_type(const Permutation& p);

// All partitions of k, in a fixed (reverse-lexicographic) order. Partition 0
// is (k) ... the last is (1,...,1). The identity's type (1^k) is last.
std::vector<CycleType> partitions(int k);

// Ordinal of a permutation under the lexicographic enumeration (identity has
// ordinal 0), and its inverse. The order is stable and shared by every
// moment-tensor index in this library.
struct PermIndex {
  std::uint64_t ordinal = 0;
};
PermIndex index_of(const Permutation& p);
Permutation permutation_at(int degree, std::uint64_t ordinal);

std::uint64_t factorial(int k);

inline constexpr int kMaxDegree = 20;          // shipped table range
inline constexpr int kMaxMaterializedDegree = 8;  // k! vectors kept in memory

// All k! elements ordered lexicographically by image sequence; index 0 is the
// identity. Materialized only for k <= 8.
std::vector<Permutation> all_permutations(int k);

// Lazy lexicographic iteration for k <= 20.
void for_each_permutation(int k, const std::function<void(const Permutation&)>& fn);

// P_sigma^{(q)} on (C^q)^{otimes k}: v_1 ⊗ ... ⊗ v_k -> v_{sigma^{-1}(1)} ⊗ ...
// Entries are 0/1; P_sigma P_tau = P_{sigma tau}.
Eigen::MatrixXcd rep_matrix(const Permutation& sigma, int q);

// q^{#(sigma tau)} = tr(P_sigma P_tau), evaluated combinatorially.
Int trace_pair(const Permutation& sigma, const Permutation& tau, long q);

}  // namespace haarcorr
