#pragma once

#include <complex>
#include <vector>

#include "haarcorr/operators.hpp"
#include "haarcorr/rational.hpp"

namespace haarcorr {

// Haar-averaged k-th moment of a correlation diagram. Exact when both
// operators carry exact entries; the float rendering is always filled.
struct MomentResult {
  int k = 1;
  long d = 2;
  long D = 2;
  long s = -1;  // -1 marks the r = 4t + 1 diagram
  bool exact = false;
  CRat value_exact;
  std::complex<double> value;
};

// Permutation-indexed building blocks of the averaged D2 chain, all indexed
// by the shared lexicographic enumeration of S_k.
//
//   t[theta][tau]  = sum_sigma Wg(sigma tau^-1, dD) d^#(tau) d^#(sigma)
//                      D^#(sigma theta^-1)
//   t_left[theta]  = sum_{sigma,tau} Wg(sigma tau^-1, dD)
//                      tr[(P_tau^d)^T A^k] d^#(sigma) D^#(tau)
//                      D^#(sigma theta^-1)
//   t_right[tau]   = sum_sigma Wg(sigma tau^-1, dD) tr(P_sigma^d B^k)
//                      d^#(tau) D^#(sigma)
//
// In the assembled chain a block's own tau is its left leg and theta names
// the right neighbour's tau, so <T_l| T^s |T_r> contracts t transposed.
struct MomentBlocks {
  int k = 1;
  long d = 2;
  long D = 2;
  std::vector<std::vector<Rat>> t;
  std::vector<CRat> t_left;
  std::vector<CRat> t_right;
};

inline constexpr int kMaxMomentOrder = 6;

// Dense k! x k! materialization (k <= 6; the k = 6 build multiplies two
// 720 x 720 rational matrices and takes a while).
std::vector<std::vector<Rat>> t_matrix(int k, long d, long D);

// Exact block vectors; both require operators with exact entries.
std::vector<CRat> t_left(int k, long d, long D, const Operator& a);
std::vector<CRat> t_right(int k, long d, long D, const Operator& b);

MomentBlocks moment_blocks(int k, long d, long D, const Operator& a, const Operator& b);

// E[D2^k] = <T_l| T^s |T_r> / (d^{s+2} D)^k, evaluated by factored
// matrix-vector passes (k!^2 work per chain step, no k!^3 materialization).
MomentResult avg_moment_d2(int k, long d, long D, long s, const Operator& a, const Operator& b);

// E[D1^k] = (1/(dD)^k) sum_{sigma,tau} Wg(sigma tau^-1, dD)
//             tr[(P_tau^d)^T A^k] tr(P_sigma^d B^k) D^#(tau) D^#(sigma).
MomentResult avg_moment_d1(int k, long d, long D, const Operator& a, const Operator& b);

}  // namespace haarcorr
