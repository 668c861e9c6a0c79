#include "haarcorr/peps_moments.hpp"

#include <complex>
#include <stdexcept>

#include "haarcorr/weingarten.hpp"

namespace haarcorr {

namespace {

constexpr long kGridRows = 6;     // vertical extent of the t = 1 templates
constexpr long kOperatorRow = 2;  // interior row carrying A and B (from the bottom)

// Scalar fields for the grid contraction: exact surd-tracking rationals, or
// plain complex doubles.
struct ExactField {
  using S = SqrtExt;
  long D;
  explicit ExactField(long D_) : D(D_) {}
  S zero() const { return SqrtExt(D); }
  S from_rat(const Rat& r) const { return SqrtExt::scalar(CRat{r}, D); }
  S from_int(const Int& i) const { return SqrtExt::scalar(CRat{Rat(i)}, D); }
  S from_trace(const CRat& c) const { return SqrtExt::scalar(c, D); }
  S sqrt_pow(int n) const { return SqrtExt::sqrt_pow(D, static_cast<unsigned>(n)); }
};

struct FloatField {
  using S = std::complex<double>;
  long D;
  double sq;
  explicit FloatField(long D_) : D(D_), sq(std::sqrt(static_cast<double>(D_))) {}
  S zero() const { return 0.0; }
  S from_rat(const Rat& r) const { return to_double(r); }
  S from_int(const Int& i) const { return i.get_d(); }
  S from_trace(const std::complex<double>& c) const { return c; }
  S sqrt_pow(int n) const { return std::pow(sq, n); }
};

void check_dims(long d, long D) {
  if (d < 1 || D < 1) throw std::invalid_argument("peps moments: need d >= 1 and D >= 1");
}

// Shared combinatorial tables for fixed (k, d, D). The horizontal structure
// collapses into two rank-2 tables,
//   S(gamma, delta) = sum_sigma Wg(sigma gamma^-1) d^#(sigma) D^#(sigma delta^-1)
//   W2(beta, gprev) = sum_alpha Wg(beta alpha^-1) d^#(alpha) S(gprev, alpha)
// so each grid tensor entry is a product of O(1) lookups.
struct Tables {
  int k;
  long d, D;
  std::uint64_t n;
  PairClassTable pct;
  std::vector<Rat> wgv;
  std::vector<Int> dpow, Dpow;
  std::vector<Rat> srat;  // n*n, [gamma * n + delta]
  std::vector<Rat> w2;    // n*n, [beta * n + gprev]
  std::vector<Int> kfac;  // n*n, d^{#(beta gamma^-1)}
  std::vector<Rat> li, ri;  // operator-free edge sums

  Tables(int k_, long d_, long D_) : k(k_), d(d_), D(D_), pct(k_) {
    n = pct.size();
    WeingartenTable table(k_, d_ * D_);
    for (const auto& v : table.values()) wgv.push_back(v);
    dpow.resize(static_cast<std::size_t>(k_) + 1);
    Dpow.resize(static_cast<std::size_t>(k_) + 1);
    for (int j = 0; j <= k_; ++j) {
      dpow[static_cast<std::size_t>(j)] = ipow(Int(d_), static_cast<unsigned>(j));
      Dpow[static_cast<std::size_t>(j)] = ipow(Int(D_), static_cast<unsigned>(j));
    }
    srat.assign(n * n, Rat(0));
    for (std::uint64_t g = 0; g < n; ++g)
      for (std::uint64_t dl = 0; dl < n; ++dl) {
        Rat acc(0);
        for (std::uint64_t sg = 0; sg < n; ++sg)
          acc += wg(sg, g) * Rat(dp(sg)) * Rat(Dp_pair(sg, dl));
        srat[g * n + dl] = acc;
      }
    w2.assign(n * n, Rat(0));
    for (std::uint64_t b = 0; b < n; ++b)
      for (std::uint64_t g = 0; g < n; ++g) {
        Rat acc(0);
        for (std::uint64_t al = 0; al < n; ++al)
          acc += wg(b, al) * Rat(dp(al)) * srat[g * n + al];
        w2[b * n + g] = acc;
      }
    kfac.resize(n * n);
    for (std::uint64_t b = 0; b < n; ++b)
      for (std::uint64_t g = 0; g < n; ++g) kfac[b * n + g] = dp_pair(b, g);
    li.assign(n, Rat(0));
    ri.assign(n, Rat(0));
    for (std::uint64_t b = 0; b < n; ++b) {
      Rat accl(0), accr(0);
      for (std::uint64_t x = 0; x < n; ++x) {
        accl += wg(b, x) * Rat(dp(x)) * Rat(Dp(x));
        accr += wg(x, b) * Rat(dp(x)) * Rat(Dp(x));
      }
      li[b] = accl;
      ri[b] = accr;
    }
  }

  const Rat& wg(std::uint64_t i, std::uint64_t j) const {
    return wgv[static_cast<std::size_t>(pct(i, j))];
  }
  int cyc(std::uint64_t i) const { return pct.cycles(i, 0); }
  int cyc_pair(std::uint64_t i, std::uint64_t j) const { return pct.cycles(i, j); }
  const Int& dp(std::uint64_t i) const { return dpow[static_cast<std::size_t>(cyc(i))]; }
  const Int& Dp(std::uint64_t i) const { return Dpow[static_cast<std::size_t>(cyc(i))]; }
  const Int& dp_pair(std::uint64_t i, std::uint64_t j) const {
    return dpow[static_cast<std::size_t>(cyc_pair(i, j))];
  }
  const Int& Dp_pair(std::uint64_t i, std::uint64_t j) const {
    return Dpow[static_cast<std::size_t>(cyc_pair(i, j))];
  }
};

std::vector<CRat> exact_traces(const Tables& t, const Operator& op, const char* name) {
  if (!op.has_exact())
    throw std::invalid_argument(std::string(name) + ": exact path needs exact operator entries");
  if (op.dim() != t.d) throw std::invalid_argument(std::string(name) + ": operator must be d x d");
  auto ptr = exact_power_traces(*op.exact, t.k);
  auto perms = all_permutations(t.k);
  std::vector<CRat> out(t.n);
  for (std::uint64_t i = 0; i < t.n; ++i)
    out[i] = cycle_trace_exact(ptr, perms[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<std::complex<double>> float_traces(const Tables& t, const Operator& op,
                                               const char* name) {
  if (op.dim() != t.d) throw std::invalid_argument(std::string(name) + ": operator must be d x d");
  auto ptr = power_traces(op.m, t.k);
  auto perms = all_permutations(t.k);
  std::vector<std::complex<double>> out(t.n);
  for (std::uint64_t i = 0; i < t.n; ++i)
    out[i] = cycle_trace(ptr, perms[static_cast<std::size_t>(i)]);
  return out;
}

// Grid contraction over per-column states (beta, gamma), swept top row to
// bottom row. Vertical bonds contribute D^{#(beta zeta^-1)/2} D^{#(eps
// gamma^-1)/2} factors between adjacent rows; row weights collapse the
// horizontal chain via the W2 table.
template <class Field>
class GridEngine {
 public:
  using S = typename Field::S;

  GridEngine(const Tables& t, const Field& f, long cols, std::vector<S> tr_a, std::vector<S> tr_b)
      : t_(t), f_(f), cols_(cols), n_(t.n), n2_(t.n * t.n) {
    states_ = 1;
    for (long c = 0; c < cols_; ++c) {
      states_ *= n2_;
      if (states_ > (1u << 24))
        throw std::invalid_argument("peps moments: permutation state space exceeds budget");
    }
    la_ = edge_left(tr_a);
    ra_ = edge_right(tr_b);
    li_.resize(t_.li.size());
    ri_.resize(t_.ri.size());
    for (std::uint64_t i = 0; i < n_; ++i) {
      li_[i] = f_.from_rat(t_.li[i]);
      ri_[i] = f_.from_rat(t_.ri[i]);
    }
  }

  // Value of the full 6-row grid with operators on the given interior row
  // (or on the top row with both slots when d1 = true).
  S contract(long op_row, bool d1) {
    std::vector<S> frontier(states_, f_.zero());
    for (std::uint64_t st = 0; st < states_; ++st)
      frontier[st] = row_weight(st, kGridRows - 1, op_row, d1);
    for (long r = kGridRows - 2; r >= 0; --r) {
      vertical_apply(frontier);
      if (r > 0) {
        for (std::uint64_t st = 0; st < states_; ++st)
          frontier[st] = frontier[st] * row_weight(st, r, op_row, d1);
      } else {
        S total = f_.zero();
        for (std::uint64_t st = 0; st < states_; ++st)
          total += frontier[st] * row_weight(st, 0, op_row, d1);
        return total;
      }
    }
    throw std::logic_error("unreachable");
  }

 private:
  std::vector<S> edge_left(const std::vector<S>& tr) {
    std::vector<S> out(n_, f_.zero());
    for (std::uint64_t b = 0; b < n_; ++b) {
      S acc = f_.zero();
      for (std::uint64_t al = 0; al < n_; ++al)
        acc += f_.from_rat(t_.wg(b, al)) * tr[al] * f_.from_int(t_.Dp(al));
      out[b] = acc;
    }
    return out;
  }
  std::vector<S> edge_right(const std::vector<S>& tr) {
    std::vector<S> out(n_, f_.zero());
    for (std::uint64_t g = 0; g < n_; ++g) {
      S acc = f_.zero();
      for (std::uint64_t sg = 0; sg < n_; ++sg)
        acc += f_.from_rat(t_.wg(sg, g)) * tr[sg] * f_.from_int(t_.Dp(sg));
      out[g] = acc;
    }
    return out;
  }

  // (beta_c, gamma_c) of column c inside a state; column cols-1 varies
  // fastest.
  std::pair<std::uint64_t, std::uint64_t> decode(std::uint64_t st, long c) const {
    long shift = cols_ - 1 - c;
    std::uint64_t pair = st;
    for (long i = 0; i < shift; ++i) pair /= n2_;
    pair %= n2_;
    return {pair / n_, pair % n_};
  }

  S row_weight(std::uint64_t st, long row, long op_row, bool d1) const {
    bool caps = row == 0 || row == kGridRows - 1;
    bool has_ops = d1 ? row == kGridRows - 1 : row == op_row;
    const std::vector<S>& lvec = has_ops ? la_ : li_;
    const std::vector<S>& rvec = has_ops ? ra_ : ri_;

    auto [b0, g0] = decode(st, 0);
    S w = lvec[b0] * f_.from_int(t_.kfac[b0 * n_ + g0]);
    std::uint64_t gprev = g0;
    for (long c = 1; c < cols_; ++c) {
      auto [b, g] = decode(st, c);
      w = w * f_.from_rat(t_.w2[b * n_ + gprev]) * f_.from_int(t_.kfac[b * n_ + g]);
      gprev = g;
    }
    auto [bl, gl] = decode(st, cols_ - 1);
    (void)bl;
    w = w * rvec[gl];
    if (caps) {
      int expo = 0;
      for (long c = 0; c < cols_; ++c) {
        auto [b, g] = decode(st, c);
        expo += t_.cyc(b) + t_.cyc(g);
      }
      w = w * f_.sqrt_pow(expo);
    }
    return w;
  }

  // frontier <- (tensor product over columns of V) * frontier with
  // V[(b,g),(bu,gu)] = D^{#(b gu^-1)/2} D^{#(bu g^-1)/2}, applied as two
  // rank-1 passes per column.
  void vertical_apply(std::vector<S>& frontier) const {
    std::vector<S> h(n2_, f_.zero());
    std::vector<S> out(n2_, f_.zero());
    for (long c = 0; c < cols_; ++c) {
      std::uint64_t stride = 1;
      for (long i = 0; i < cols_ - 1 - c; ++i) stride *= n2_;
      std::uint64_t blocks = states_ / (stride * n2_);
      for (std::uint64_t blk = 0; blk < blocks; ++blk)
        for (std::uint64_t off = 0; off < stride; ++off) {
          std::uint64_t base = blk * stride * n2_ + off;
          // h[g][gu] = sum_bu D^{#(bu g^-1)/2} f[bu, gu]
          for (std::uint64_t g = 0; g < n_; ++g)
            for (std::uint64_t gu = 0; gu < n_; ++gu) {
              S acc = f_.zero();
              for (std::uint64_t bu = 0; bu < n_; ++bu)
                acc += f_.sqrt_pow(t_.cyc_pair(bu, g)) * frontier[base + (bu * n_ + gu) * stride];
              h[g * n_ + gu] = acc;
            }
          // out[b][g] = sum_gu D^{#(b gu^-1)/2} h[g][gu]
          for (std::uint64_t b = 0; b < n_; ++b)
            for (std::uint64_t g = 0; g < n_; ++g) {
              S acc = f_.zero();
              for (std::uint64_t gu = 0; gu < n_; ++gu)
                acc += f_.sqrt_pow(t_.cyc_pair(b, gu)) * h[g * n_ + gu];
              out[b * n_ + g] = acc;
            }
          for (std::uint64_t p = 0; p < n2_; ++p) frontier[base + p * stride] = out[p];
        }
    }
  }

  const Tables& t_;
  Field f_;
  long cols_;
  std::uint64_t n_, n2_, states_;
  std::vector<S> la_, ra_, li_, ri_;
};

Rat grid_norm(int k, long d, long D, long cols) {
  // d^{rows * cols} D^{rows + cols}, all to the k-th power.
  Int base = ipow(Int(d), static_cast<unsigned>(kGridRows * cols)) *
             ipow(Int(D), static_cast<unsigned>(kGridRows + cols));
  return Rat(ipow(base, static_cast<unsigned>(k)));
}

MomentResult run_exact(int k, long d, long D, long s, long cols, long op_row, bool d1,
                       const Operator& a, const Operator& b) {
  Tables t(k, d, D);
  ExactField f(D);
  auto tra_c = exact_traces(t, a, "peps moment A");
  auto trb_c = exact_traces(t, b, "peps moment B");
  std::vector<SqrtExt> tra(t.n), trb(t.n);
  for (std::uint64_t i = 0; i < t.n; ++i) {
    tra[i] = f.from_trace(tra_c[i]);
    trb[i] = f.from_trace(trb_c[i]);
  }
  GridEngine<ExactField> engine(t, f, cols, std::move(tra), std::move(trb));
  SqrtExt value = engine.contract(op_row, d1);
  if (!value.is_rational())
    throw std::logic_error("peps moment: surd component of the assembled value did not cancel");
  MomentResult r;
  r.k = k;
  r.d = d;
  r.D = D;
  r.s = d1 ? -1 : s;
  r.exact = true;
  r.value_exact = value.a / grid_norm(k, d, D, cols);
  r.value_exact.re.canonicalize();
  r.value_exact.im.canonicalize();
  r.value = r.value_exact.to_complex();
  return r;
}

MomentResult run_float(int k, long d, long D, long s, long cols, long op_row, bool d1,
                       const Operator& a, const Operator& b) {
  Tables t(k, d, D);
  FloatField f(D);
  auto tra = float_traces(t, a, "peps moment A");
  auto trb = float_traces(t, b, "peps moment B");
  GridEngine<FloatField> engine(t, f, cols, std::move(tra), std::move(trb));
  std::complex<double> value = engine.contract(op_row, d1);
  MomentResult r;
  r.k = k;
  r.d = d;
  r.D = D;
  r.s = d1 ? -1 : s;
  r.exact = false;
  r.value = value / to_double(grid_norm(k, d, D, cols));
  return r;
}

}  // namespace

MomentResult avg_moment_d2_peps(int k, long d, long D, long s, const Operator& a,
                                const Operator& b) {
  check_dims(d, D);
  if (k < 1 || k > kMaxPepsGridOrder)
    throw std::invalid_argument("avg_moment_d2_peps: k must be in [1, " +
                                std::to_string(kMaxPepsGridOrder) + "]");
  if (s < 1) throw std::invalid_argument("avg_moment_d2_peps: s must be >= 1");
  long cols = s + 2;
  if (a.has_exact() && b.has_exact()) return run_exact(k, d, D, s, cols, kOperatorRow, false, a, b);
  return run_float(k, d, D, s, cols, kOperatorRow, false, a, b);
}

MomentResult avg_moment_d1_peps(int k, long d, long D, const Operator& a, const Operator& b) {
  check_dims(d, D);
  if (k < 1 || k > kMaxPepsSpecialOrder)
    throw std::invalid_argument("avg_moment_d1_peps: k must be in [1, " +
                                std::to_string(kMaxPepsSpecialOrder) + "]");
  if (a.has_exact() && b.has_exact()) return run_exact(k, d, D, 0, 1, 0, true, a, b);
  return run_float(k, d, D, 0, 1, 0, true, a, b);
}

namespace {

// Direct entry evaluation per the printed formulas; shared scaffolding.
struct EntryCtx {
  Tables t;
  ExactField f;
  EntryCtx(int k, long d, long D) : t(k, d, D), f(D) {}
};

}  // namespace

SqrtExt peps_block_entry(PepsBlockKind kind, int k, long d, long D, const PepsBlockIndex& idx,
                         const Operator* op) {
  check_dims(d, D);
  if (k < 1 || k > kMaxPepsSpecialOrder)
    throw std::invalid_argument("peps_block_entry: unsupported k");
  EntryCtx c(k, d, D);
  const Tables& t = c.t;
  const ExactField& f = c.f;
  std::uint64_t n = t.n;

  std::vector<CRat> tr;
  bool needs_op = kind == PepsBlockKind::kLeft || kind == PepsBlockKind::kRight;
  if (needs_op) {
    if (op == nullptr)
      throw std::invalid_argument("peps_block_entry: this kind carries an operator slot");
    tr = exact_traces(t, *op, "peps_block_entry");
  }

  bool left_col = kind == PepsBlockKind::kLeft || kind == PepsBlockKind::kTopLeft ||
                  kind == PepsBlockKind::kBottomLeft;
  bool right_col = kind == PepsBlockKind::kRight || kind == PepsBlockKind::kTopRight ||
                   kind == PepsBlockKind::kBottomRight;
  bool top_row = kind == PepsBlockKind::kTop || kind == PepsBlockKind::kTopLeft ||
                 kind == PepsBlockKind::kTopRight;
  bool bottom_row = kind == PepsBlockKind::kBottom || kind == PepsBlockKind::kBottomLeft ||
                    kind == PepsBlockKind::kBottomRight;

  bool sum_alpha = left_col;
  bool sum_bg = bottom_row;

  SqrtExt total = f.zero();
  auto term = [&](std::uint64_t al, std::uint64_t be, std::uint64_t ga) {
    // Common: Wg(beta alpha^-1) * [alpha slot] * d^{#(beta gamma^-1)}
    //         * sum_sigma Wg(sigma gamma^-1) * [sigma slot] * [horizontal]
    //         * vertical factors.
    SqrtExt w = f.from_rat(t.wg(be, al));
    if (kind == PepsBlockKind::kLeft)
      w = w * f.from_trace(tr[al]) * f.from_int(t.Dp(al));
    else if (left_col)
      w = w * f.from_int(t.dp(al)) * f.from_int(t.Dp(al));
    else
      w = w * f.from_int(t.dp(al));
    w = w * f.from_int(t.dp_pair(be, ga));
    // sigma sum with the appropriate horizontal closure.
    if (kind == PepsBlockKind::kRight) {
      CRat acc;
      for (std::uint64_t sg = 0; sg < n; ++sg)
        acc += (t.wg(sg, ga) * Rat(t.Dp(sg))) * tr[sg];
      w = w * f.from_trace(acc);
    } else if (right_col) {
      Rat acc(0);
      for (std::uint64_t sg = 0; sg < n; ++sg)
        acc += t.wg(sg, ga) * Rat(t.dp(sg)) * Rat(t.Dp(sg));
      w = w * f.from_rat(acc);
    } else {
      w = w * f.from_rat(t.srat[ga * n + idx.delta]);
    }
    // Vertical: caps on the outer boundary, bond factors toward the row
    // above; the bottom row carries both.
    int expo = 0;
    if (top_row || bottom_row) expo += t.cyc(be) + t.cyc(ga);
    if (!top_row) expo += t.cyc_pair(be, idx.zeta) + t.cyc_pair(idx.epsilon, ga);
    return w * f.sqrt_pow(expo);
  };

  std::uint64_t al_lo = sum_alpha ? 0 : idx.alpha, al_hi = sum_alpha ? n : idx.alpha + 1;
  for (std::uint64_t al = al_lo; al < al_hi; ++al) {
    if (sum_bg) {
      for (std::uint64_t be = 0; be < n; ++be)
        for (std::uint64_t ga = 0; ga < n; ++ga) total += term(al, be, ga);
    } else {
      total += term(al, idx.beta, idx.gamma);
    }
  }
  return total;
}

SqrtExt peps_special_block_entry(PepsSpecialBlockKind kind, int k, long d, long D,
                                 const PepsBlockIndex& idx, const Operator* a,
                                 const Operator* b) {
  check_dims(d, D);
  if (k < 1 || k > kMaxPepsSpecialOrder)
    throw std::invalid_argument("peps_special_block_entry: unsupported k");
  EntryCtx c(k, d, D);
  const Tables& t = c.t;
  const ExactField& f = c.f;
  std::uint64_t n = t.n;

  std::vector<CRat> tra, trb;
  if (kind == PepsSpecialBlockKind::kTop) {
    if (a == nullptr || b == nullptr)
      throw std::invalid_argument("peps_special_block_entry: the top block carries both slots");
    tra = exact_traces(t, *a, "peps_special_block_entry A");
    trb = exact_traces(t, *b, "peps_special_block_entry B");
  }

  auto pair_value = [&](std::uint64_t be, std::uint64_t ga) {
    // [sum_alpha Wg(beta alpha^-1) slot_alpha D^#(alpha)]
    //   * d^{#(beta gamma^-1)}
    //   * [sum_sigma Wg(sigma gamma^-1) slot_sigma D^#(sigma)] * vertical.
    SqrtExt l = f.zero(), r = f.zero();
    if (kind == PepsSpecialBlockKind::kTop) {
      CRat accl, accr;
      for (std::uint64_t al = 0; al < n; ++al) accl += (t.wg(be, al) * Rat(t.Dp(al))) * tra[al];
      for (std::uint64_t sg = 0; sg < n; ++sg) accr += (t.wg(sg, ga) * Rat(t.Dp(sg))) * trb[sg];
      l = f.from_trace(accl);
      r = f.from_trace(accr);
    } else {
      l = f.from_rat(t.li[be]);
      r = f.from_rat(t.ri[ga]);
    }
    SqrtExt w = l * f.from_int(t.dp_pair(be, ga)) * r;
    int expo = 0;
    bool top = kind == PepsSpecialBlockKind::kTop;
    bool bottom = kind == PepsSpecialBlockKind::kBottom;
    if (top || bottom) expo += t.cyc(be) + t.cyc(ga);
    if (!top) expo += t.cyc_pair(be, idx.zeta) + t.cyc_pair(idx.epsilon, ga);
    return w * f.sqrt_pow(expo);
  };

  if (kind == PepsSpecialBlockKind::kBottom) {
    SqrtExt total = f.zero();
    for (std::uint64_t be = 0; be < n; ++be)
      for (std::uint64_t ga = 0; ga < n; ++ga) total += pair_value(be, ga);
    return total;
  }
  return pair_value(idx.beta, idx.gamma);
}

}  // namespace haarcorr
