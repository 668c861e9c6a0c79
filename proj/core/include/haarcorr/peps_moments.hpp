#pragma once

#include <cstdint>
#include <vector>

#include "haarcorr/mps_moments.hpp"
#include "haarcorr/operators.hpp"
#include "haarcorr/rational.hpp"

namespace haarcorr {

// The nine permutation tensors of the averaged 2D diagram plus the three
// special-case tensors. Entries are exact rationals times half-integer
// powers of D, evaluated lazily from their printed factorizations.
enum class PepsBlockKind {
  kBulk,         // free (alpha, beta, gamma, delta, epsilon, zeta)
  kLeft,         // free (beta, gamma, delta, epsilon, zeta); carries the A slot
  kRight,        // free (alpha, beta, gamma, epsilon, zeta); carries the B slot
  kTop,          // free (alpha, beta, gamma, delta)
  kBottom,       // free (alpha, delta, epsilon, zeta)
  kTopLeft,      // free (beta, gamma, delta)
  kTopRight,     // free (alpha, beta, gamma)
  kBottomLeft,   // free (delta, epsilon, zeta)
  kBottomRight,  // free (alpha, epsilon, zeta)
};

enum class PepsSpecialBlockKind {
  kInterior,  // free (beta, gamma, zeta, epsilon)
  kTop,       // free (beta, gamma); carries both operator slots
  kBottom,    // free (zeta, epsilon)
};

// Permutation indices of one block entry, by ordinal under the shared
// enumeration; unused slots are ignored by each kind.
struct PepsBlockIndex {
  std::uint64_t alpha = 0;
  std::uint64_t beta = 0;
  std::uint64_t gamma = 0;
  std::uint64_t delta = 0;
  std::uint64_t epsilon = 0;
  std::uint64_t zeta = 0;
};

// Entry evaluators following the printed per-kind formulas term by term
// (independent of the assembled engine, which uses factored tables).
// Operator-slot kinds take the corresponding operator; it must carry exact
// entries.
SqrtExt peps_block_entry(PepsBlockKind kind, int k, long d, long D, const PepsBlockIndex& idx,
                         const Operator* op = nullptr);
SqrtExt peps_special_block_entry(PepsSpecialBlockKind kind, int k, long d, long D,
                                 const PepsBlockIndex& idx, const Operator* a = nullptr,
                                 const Operator* b = nullptr);

inline constexpr int kMaxPepsGridOrder = 3;
inline constexpr int kMaxPepsSpecialOrder = 4;

// E[D2^k] on the 6 x (s + 2) template, normalized by (d^{6(s+2)} D^{s+8})^k
// (the printed (d^18 D^9)^k at s = 1, with the A = B = I => 1 identity
// fixing the general exponent). Exact when both operators are exact.
MomentResult avg_moment_d2_peps(int k, long d, long D, long s, const Operator& a,
                                const Operator& b);

// E[D1^k] on the single-column template, normalized by (d^6 D^7)^k.
MomentResult avg_moment_d1_peps(int k, long d, long D, const Operator& a, const Operator& b);

}  // namespace haarcorr
