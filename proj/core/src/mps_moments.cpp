#include "haarcorr/mps_moments.hpp"

#include <stdexcept>

#include "haarcorr/weingarten.hpp"

namespace haarcorr {

namespace {

void check_order(int k) {
  if (k < 1 || k > kMaxMomentOrder)
    throw std::invalid_argument("moment order k must be in [1, " +
                                std::to_string(kMaxMomentOrder) + "], got " + std::to_string(k));
}

// Shared per-(k, d, D) context: Weingarten values, pair classes, and powers.
struct Ctx {
  int k;
  long d, D;
  std::uint64_t n;
  PairClassTable pct;
  std::vector<Rat> wg;        // per class of sigma tau^-1
  std::vector<Int> dpow, Dpow;  // d^j, D^j for j <= k
  std::vector<int> ncyc;      // cycle count per permutation ordinal

  Ctx(int k_, long d_, long D_) : k(k_), d(d_), D(D_), pct(k_) {
    check_order(k_);
    if (d_ < 1 || D_ < 1) throw std::invalid_argument("moments: need d >= 1 and D >= 1");
    n = pct.size();
    WeingartenTable table(k_, d_ * D_);
    wg.reserve(table.values().size());
    for (const auto& v : table.values()) wg.push_back(v);
    dpow.resize(static_cast<std::size_t>(k_) + 1);
    Dpow.resize(static_cast<std::size_t>(k_) + 1);
    for (int j = 0; j <= k_; ++j) {
      dpow[static_cast<std::size_t>(j)] = ipow(Int(d_), static_cast<unsigned>(j));
      Dpow[static_cast<std::size_t>(j)] = ipow(Int(D_), static_cast<unsigned>(j));
    }
    ncyc.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) ncyc[i] = pct.cycles(i, 0);
  }

  const Rat& wg_of(std::uint64_t i, std::uint64_t j) const {
    return wg[static_cast<std::size_t>(pct(i, j))];
  }
  const Int& dp(std::uint64_t i) const { return dpow[static_cast<std::size_t>(ncyc[i])]; }
  const Int& Dp(std::uint64_t i) const { return Dpow[static_cast<std::size_t>(ncyc[i])]; }
  const Int& Dp_pair(std::uint64_t i, std::uint64_t j) const {
    return Dpow[static_cast<std::size_t>(pct.cycles(i, j))];
  }
};

std::vector<CRat> operator_cycle_traces(const Ctx& c, const Operator& op, const char* name) {
  if (!op.has_exact())
    throw std::invalid_argument(std::string(name) +
                                ": exact moment path requires an operator with exact entries");
  if (op.dim() != c.d) throw std::invalid_argument(std::string(name) + ": operator must be d x d");
  auto ptr = exact_power_traces(*op.exact, c.k);
  std::vector<CRat> out(c.n);
  auto perms = all_permutations(c.k);
  for (std::uint64_t i = 0; i < c.n; ++i)
    out[i] = cycle_trace_exact(ptr, perms[static_cast<std::size_t>(i)]);
  return out;
}

// w <- T^transposed * w via two k!^2 passes.
std::vector<CRat> chain_step(const Ctx& c, const std::vector<CRat>& w) {
  std::vector<CRat> u(c.n);
  for (std::uint64_t s = 0; s < c.n; ++s) {
    CRat acc;
    for (std::uint64_t b = 0; b < c.n; ++b) {
      if (w[b].is_zero()) continue;
      acc += Rat(c.Dp_pair(s, b)) * w[b];
    }
    u[s] = std::move(acc);
  }
  std::vector<CRat> out(c.n);
  for (std::uint64_t a = 0; a < c.n; ++a) {
    CRat acc;
    for (std::uint64_t s = 0; s < c.n; ++s) {
      if (u[s].is_zero()) continue;
      acc += (c.wg_of(s, a) * Rat(c.dp(s))) * u[s];
    }
    out[a] = Rat(c.dp(a)) * acc;
  }
  return out;
}

std::vector<CRat> left_vector(const Ctx& c, const std::vector<CRat>& tr_a) {
  std::vector<CRat> a1(c.n);
  for (std::uint64_t s = 0; s < c.n; ++s) {
    CRat acc;
    for (std::uint64_t t = 0; t < c.n; ++t) {
      if (tr_a[t].is_zero()) continue;
      acc += (c.wg_of(s, t) * Rat(c.Dp(t))) * tr_a[t];
    }
    a1[s] = std::move(acc);
  }
  std::vector<CRat> out(c.n);
  for (std::uint64_t th = 0; th < c.n; ++th) {
    CRat acc;
    for (std::uint64_t s = 0; s < c.n; ++s) {
      if (a1[s].is_zero()) continue;
      acc += (Rat(c.dp(s)) * Rat(c.Dp_pair(s, th))) * a1[s];
    }
    out[th] = std::move(acc);
  }
  return out;
}

std::vector<CRat> right_vector(const Ctx& c, const std::vector<CRat>& tr_b) {
  std::vector<CRat> out(c.n);
  for (std::uint64_t t = 0; t < c.n; ++t) {
    CRat acc;
    for (std::uint64_t s = 0; s < c.n; ++s) {
      if (tr_b[s].is_zero()) continue;
      acc += (c.wg_of(s, t) * Rat(c.Dp(s))) * tr_b[s];
    }
    out[t] = Rat(c.dp(t)) * acc;
  }
  return out;
}

Rat chain_norm(const Ctx& c, long s, int k) {
  // (d^{s+2} D)^k
  Int base = ipow(Int(c.d), static_cast<unsigned>(s + 2)) * Int(c.D);
  return Rat(ipow(base, static_cast<unsigned>(k)));
}

MomentResult finish(const Ctx& c, CRat value, const Rat& norm, long s) {
  MomentResult r;
  r.k = c.k;
  r.d = c.d;
  r.D = c.D;
  r.s = s;
  r.exact = true;
  r.value_exact = value / norm;
  r.value_exact.re.canonicalize();
  r.value_exact.im.canonicalize();
  r.value = r.value_exact.to_complex();
  return r;
}

// Float mirror of the exact path, used when an operator has no exact form.
MomentResult avg_moment_d2_float(int k, long d, long D, long s, const Operator& a,
                                 const Operator& b);
MomentResult avg_moment_d1_float(int k, long d, long D, const Operator& a, const Operator& b);

}  // namespace

std::vector<std::vector<Rat>> t_matrix(int k, long d, long D) {
  Ctx c(k, d, D);
  std::vector<std::vector<Rat>> t(c.n, std::vector<Rat>(c.n, Rat(0)));
  // t[theta][tau] = d^#(tau) * sum_sigma (Wg(sigma tau^-1) d^#(sigma)) D^#(sigma theta^-1)
  for (std::uint64_t th = 0; th < c.n; ++th)
    for (std::uint64_t ta = 0; ta < c.n; ++ta) {
      Rat acc(0);
      for (std::uint64_t s = 0; s < c.n; ++s)
        acc += c.wg_of(s, ta) * Rat(c.dp(s)) * Rat(c.Dp_pair(s, th));
      t[th][ta] = acc * Rat(c.dp(ta));
      t[th][ta].canonicalize();
    }
  return t;
}

std::vector<CRat> t_left(int k, long d, long D, const Operator& a) {
  Ctx c(k, d, D);
  return left_vector(c, operator_cycle_traces(c, a, "t_left"));
}

std::vector<CRat> t_right(int k, long d, long D, const Operator& b) {
  Ctx c(k, d, D);
  return right_vector(c, operator_cycle_traces(c, b, "t_right"));
}

MomentBlocks moment_blocks(int k, long d, long D, const Operator& a, const Operator& b) {
  MomentBlocks blocks;
  blocks.k = k;
  blocks.d = d;
  blocks.D = D;
  blocks.t = t_matrix(k, d, D);
  blocks.t_left = t_left(k, d, D, a);
  blocks.t_right = t_right(k, d, D, b);
  return blocks;
}

MomentResult avg_moment_d2(int k, long d, long D, long s, const Operator& a, const Operator& b) {
  if (s < 0) throw std::invalid_argument("avg_moment_d2: s must be >= 0");
  if (!a.has_exact() || !b.has_exact()) return avg_moment_d2_float(k, d, D, s, a, b);
  Ctx c(k, d, D);
  auto w = right_vector(c, operator_cycle_traces(c, b, "avg_moment_d2 B"));
  for (long step = 0; step < s; ++step) w = chain_step(c, w);
  auto l = left_vector(c, operator_cycle_traces(c, a, "avg_moment_d2 A"));
  CRat value;
  for (std::uint64_t i = 0; i < c.n; ++i) value += l[i] * w[i];
  return finish(c, std::move(value), chain_norm(c, s, k), s);
}

MomentResult avg_moment_d1(int k, long d, long D, const Operator& a, const Operator& b) {
  if (!a.has_exact() || !b.has_exact()) return avg_moment_d1_float(k, d, D, a, b);
  Ctx c(k, d, D);
  auto tr_a = operator_cycle_traces(c, a, "avg_moment_d1 A");
  auto tr_b = operator_cycle_traces(c, b, "avg_moment_d1 B");
  CRat value;
  for (std::uint64_t s = 0; s < c.n; ++s) {
    if (tr_b[s].is_zero()) continue;
    CRat inner;
    for (std::uint64_t t = 0; t < c.n; ++t) {
      if (tr_a[t].is_zero()) continue;
      inner += (c.wg_of(s, t) * Rat(c.Dp(t))) * tr_a[t];
    }
    value += (Rat(c.Dp(s)) * tr_b[s]) * inner;
  }
  Rat norm(ipow(Int(d * D), static_cast<unsigned>(k)));
  return finish(c, std::move(value), norm, -1);
}

namespace {

using CVec = std::vector<std::complex<double>>;

struct FloatCtx {
  Ctx c;
  std::vector<double> wg;
  FloatCtx(int k, long d, long D) : c(k, d, D) {
    wg.reserve(c.wg.size());
    for (const auto& v : c.wg) wg.push_back(to_double(v));
  }
  double wg_of(std::uint64_t i, std::uint64_t j) const {
    return wg[static_cast<std::size_t>(c.pct(i, j))];
  }
};

CVec float_cycle_traces(const FloatCtx& f, const Operator& op, const char* name) {
  if (op.dim() != f.c.d) throw std::invalid_argument(std::string(name) + ": operator must be d x d");
  auto ptr = power_traces(op.m, f.c.k);
  auto perms = all_permutations(f.c.k);
  CVec out(f.c.n);
  for (std::uint64_t i = 0; i < f.c.n; ++i)
    out[i] = cycle_trace(ptr, perms[static_cast<std::size_t>(i)]);
  return out;
}

MomentResult avg_moment_d2_float(int k, long d, long D, long s, const Operator& a,
                                 const Operator& b) {
  FloatCtx f(k, d, D);
  const auto& c = f.c;
  auto dpd = [&](std::uint64_t i) { return c.dp(i).get_d(); };
  auto Dpd = [&](std::uint64_t i) { return c.Dp(i).get_d(); };
  auto Dpair = [&](std::uint64_t i, std::uint64_t j) { return c.Dp_pair(i, j).get_d(); };

  auto tr_b = float_cycle_traces(f, b, "avg_moment_d2 B");
  CVec w(c.n);
  for (std::uint64_t t = 0; t < c.n; ++t) {
    std::complex<double> acc = 0;
    for (std::uint64_t sg = 0; sg < c.n; ++sg) acc += f.wg_of(sg, t) * Dpd(sg) * tr_b[sg];
    w[t] = dpd(t) * acc;
  }
  for (long step = 0; step < s; ++step) {
    CVec u(c.n);
    for (std::uint64_t sg = 0; sg < c.n; ++sg) {
      std::complex<double> acc = 0;
      for (std::uint64_t bb = 0; bb < c.n; ++bb) acc += Dpair(sg, bb) * w[bb];
      u[sg] = acc;
    }
    CVec nw(c.n);
    for (std::uint64_t aa = 0; aa < c.n; ++aa) {
      std::complex<double> acc = 0;
      for (std::uint64_t sg = 0; sg < c.n; ++sg) acc += f.wg_of(sg, aa) * dpd(sg) * u[sg];
      nw[aa] = dpd(aa) * acc;
    }
    w = std::move(nw);
  }
  auto tr_a = float_cycle_traces(f, a, "avg_moment_d2 A");
  CVec a1(c.n);
  for (std::uint64_t sg = 0; sg < c.n; ++sg) {
    std::complex<double> acc = 0;
    for (std::uint64_t t = 0; t < c.n; ++t) acc += f.wg_of(sg, t) * Dpd(t) * tr_a[t];
    a1[sg] = acc;
  }
  std::complex<double> value = 0;
  for (std::uint64_t th = 0; th < c.n; ++th) {
    std::complex<double> l = 0;
    for (std::uint64_t sg = 0; sg < c.n; ++sg) l += dpd(sg) * Dpair(sg, th) * a1[sg];
    value += l * w[th];
  }
  MomentResult r;
  r.k = k;
  r.d = d;
  r.D = D;
  r.s = s;
  r.exact = false;
  double norm = std::pow(std::pow(static_cast<double>(d), static_cast<double>(s + 2)) * D,
                         static_cast<double>(k));
  r.value = value / norm;
  return r;
}

MomentResult avg_moment_d1_float(int k, long d, long D, const Operator& a, const Operator& b) {
  FloatCtx f(k, d, D);
  const auto& c = f.c;
  auto tr_a = float_cycle_traces(f, a, "avg_moment_d1 A");
  auto tr_b = float_cycle_traces(f, b, "avg_moment_d1 B");
  std::complex<double> value = 0;
  for (std::uint64_t sg = 0; sg < c.n; ++sg) {
    std::complex<double> inner = 0;
    for (std::uint64_t t = 0; t < c.n; ++t)
      inner += f.wg_of(sg, t) * c.Dp(t).get_d() * tr_a[t];
    value += c.Dp(sg).get_d() * tr_b[sg] * inner;
  }
  MomentResult r;
  r.k = k;
  r.d = d;
  r.D = D;
  r.s = -1;
  r.exact = false;
  r.value = value / std::pow(static_cast<double>(d * D), static_cast<double>(k));
  return r;
}

}  // namespace

}  // namespace haarcorr
