#include "haarcorr/weingarten.hpp"

#include <algorithm>
#include <stdexcept>

namespace haarcorr {

namespace {

void check_k(int k, int bound, const char* what) {
  if (k < 1 || k > bound)
    throw std::invalid_argument(std::string(what) + ": degree k must be in [1, " +
                                std::to_string(bound) + "], got " + std::to_string(k));
}

Permutation class_representative(int k, const CycleType& type) {
  std::vector<int> img(k);
  int at = 0;
  for (int len : type) {
    for (int i = 0; i < len; ++i) img[at + i] = at + (i + 1) % len;
    at += len;
  }
  return Permutation(std::move(img));
}

using RatMat = std::vector<std::vector<Rat>>;
using RatVec = std::vector<Rat>;

RatVec matvec(const RatMat& m, const RatVec& v) {
  std::size_t n = v.size();
  RatVec out(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m[i][j] != 0 && v[j] != 0) out[i] += m[i][j] * v[j];
  return out;
}

// Characteristic polynomial coefficients c[0..n] with chi(x) = sum c_i x^i,
// c[n] = 1, via Faddeev-LeVerrier over exact rationals.
RatVec char_poly(const RatMat& a) {
  std::size_t n = a.size();
  RatVec c(n + 1, Rat(0));
  c[n] = 1;
  RatMat m(n, RatVec(n, Rat(0)));  // M_0 = 0
  for (std::size_t step = 1; step <= n; ++step) {
    // M <- A*M + c[n-step+1]*I
    RatMat am(n, RatVec(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t kk = 0; kk < n; ++kk)
        if (a[i][kk] != 0)
          for (std::size_t j = 0; j < n; ++j) am[i][j] += a[i][kk] * m[kk][j];
    for (std::size_t i = 0; i < n; ++i) am[i][i] += c[n - step + 1];
    m = std::move(am);
    Rat tr(0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t kk = 0; kk < n; ++kk)
        if (a[i][kk] != 0) tr += a[i][kk] * m[kk][i];
    c[n - step] = -tr / Rat(static_cast<long>(step));
  }
  return c;
}

}  // namespace

GramMatrix gram(int k, long q) {
  check_k(k, kMaxWeingartenDegree, "gram");
  if (q < 1) throw std::invalid_argument("gram: q must be >= 1");
  auto perms = all_permutations(k);
  std::size_t n = perms.size();
  GramMatrix g;
  g.k = k;
  g.q = q;
  g.entries.assign(n, std::vector<Int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Int v = ipow(Int(q), static_cast<unsigned>(cycle_count_compose_inv(perms[i], perms[j])));
      g.entries[i][j] = v;
      g.entries[j][i] = v;
    }
  return g;
}

WeingartenTable::WeingartenTable(int k, long q) : k_(k), q_(q) {
  check_k(k, kMaxWeingartenDegree, "weingarten");
  if (q < 1) throw std::invalid_argument("weingarten: q must be >= 1");
  classes_ = partitions(k);
  std::size_t p = classes_.size();

  std::vector<Permutation> reps;
  reps.reserve(p);
  for (const auto& type : classes_) reps.push_back(class_representative(k, type));

  auto index_of_type = [&](const CycleType& t) {
    for (std::size_t i = 0; i < p; ++i)
      if (classes_[i] == t) return static_cast<int>(i);
    throw std::logic_error("unknown cycle type");
  };

  // Class-collapsed action of the Gram operator on class functions:
  // a[c'][c] = sum over tau in class c of q^{#(rep(c') tau^{-1})}.
  RatMat a(p, RatVec(p, Rat(0)));
  for_each_permutation(k, [&](const Permutation& tau) {
    int c = index_of_type(cycle_type(tau));
    for (std::size_t cp = 0; cp < p; ++cp)
      a[cp][c] += Rat(ipow(Int(q), static_cast<unsigned>(cycle_count_compose_inv(reps[cp], tau))));
  });

  // h(x) with h(lambda) = 1/lambda on the nonzero spectrum and h(0) = 0,
  // built from the characteristic polynomial: strip the x^m factor, write
  // r(x) = c0 + x s(x); then h(x) = x s(x)^2 / c0^2.
  RatVec chi = char_poly(a);
  std::size_t shift = 0;
  while (shift < p && chi[shift] == 0) ++shift;
  if (shift == p + 1) throw std::logic_error("weingarten: zero characteristic polynomial");
  RatVec r(chi.begin() + static_cast<std::ptrdiff_t>(shift), chi.end());
  Rat c0 = r[0];
  RatVec s(r.begin() + 1, r.end());  // r(x) = c0 + x*s(x)

  int id_class = index_of_type(cycle_type(Permutation::identity(k)));
  RatVec rhs(p, Rat(0));
  rhs[id_class] = 1;

  auto poly_apply = [&](const RatVec& coeffs, const RatVec& v) {
    // Horner: (((c_m A + c_{m-1}) A + ...) v), evaluated as vector ops.
    RatVec acc(p, Rat(0));
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      acc = matvec(a, acc);
      for (std::size_t j = 0; j < p; ++j) acc[j] += coeffs[i] * v[j];
    }
    return acc;
  };

  RatVec sv = poly_apply(s, rhs);
  RatVec ssv = poly_apply(s, sv);
  RatVec asv = matvec(a, ssv);
  values_.resize(p);
  Rat c0sq = c0 * c0;
  for (std::size_t j = 0; j < p; ++j) {
    values_[j] = asv[j] / c0sq;
    values_[j].canonicalize();
  }
}

int WeingartenTable::class_index(const CycleType& type) const {
  for (std::size_t i = 0; i < classes_.size(); ++i)
    if (classes_[i] == type) return static_cast<int>(i);
  throw std::invalid_argument("weingarten: cycle type does not belong to S_k with k = " +
                              std::to_string(k_));
}

const Rat& WeingartenTable::value(const CycleType& type) const {
  return values_[static_cast<std::size_t>(class_index(type))];
}

const Rat& WeingartenTable::operator()(const Permutation& pi) const {
  if (pi.degree() != k_) throw std::invalid_argument("weingarten: permutation degree mismatch");
  return value(cycle_type(pi));
}

Rat weingarten(const Permutation& pi, long q) {
  WeingartenTable t(pi.degree(), q);
  return t(pi);
}

Rat weingarten(const CycleType& type, int k, long q) {
  WeingartenTable t(k, q);
  return t.value(type);
}

PairClassTable::PairClassTable(int k) : k_(k) {
  check_k(k, kMaxWeingartenDegree, "PairClassTable");
  auto perms = all_permutations(k);
  n_ = perms.size();
  classes_ = partitions(k);
  n_cycles_.resize(classes_.size());
  for (std::size_t c = 0; c < classes_.size(); ++c)
    n_cycles_[c] = static_cast<int>(classes_[c].size());
  auto index_of_type = [&](const CycleType& t) {
    for (std::size_t i = 0; i < classes_.size(); ++i)
      if (classes_[i] == t) return static_cast<std::uint8_t>(i);
    throw std::logic_error("unknown cycle type");
  };
  cls_.resize(n_ * n_);
  for (std::uint64_t i = 0; i < n_; ++i)
    for (std::uint64_t j = 0; j < n_; ++j) {
      Permutation prod = compose(perms[i], perms[j].inverse());
      cls_[i * n_ + j] = index_of_type(cycle_type(prod));
    }
}

Eigen::MatrixXcd twirl(const Eigen::MatrixXcd& X, int k, int q) {
  check_k(k, 4, "twirl");
  if (q < 1) throw std::invalid_argument("twirl: q must be >= 1");
  long dim = 1;
  for (int i = 0; i < k; ++i) dim *= q;
  if (dim > 4096) throw std::invalid_argument("twirl: q^k exceeds memory budget");
  if (X.rows() != dim || X.cols() != dim)
    throw std::invalid_argument("twirl: X must be square of dimension q^k");

  auto perms = all_permutations(k);
  std::size_t n = perms.size();

  // Index maps: row_map[s][b] = r with (P_sigma)_{r b} = 1.
  std::vector<std::vector<long>> row_map(n, std::vector<long>(dim));
  for (std::size_t s = 0; s < n; ++s) {
    Permutation inv = perms[s].inverse();
    std::vector<int> digits(k, 0);
    for (long col = 0; col < dim; ++col) {
      long row = 0;
      for (int m = 0; m < k; ++m) row = row * q + digits[inv(m)];
      row_map[s][col] = row;
      for (int m = k - 1; m >= 0; --m) {
        if (++digits[m] < q) break;
        digits[m] = 0;
      }
    }
  }

  // t[tau] = tr(X P_tau^T) = sum_b X(row_map[tau][b], b).
  std::vector<std::complex<double>> t(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::complex<double> acc = 0;
    for (long b = 0; b < dim; ++b) acc += X(row_map[s][b], b);
    t[s] = acc;
  }

  WeingartenTable wg(k, q);
  PairClassTable pct(k);
  std::vector<double> wgd(wg.values().size());
  for (std::size_t c = 0; c < wgd.size(); ++c) wgd[c] = to_double(wg.values()[c]);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t s = 0; s < n; ++s) {
    std::complex<double> coef = 0;
    for (std::size_t u = 0; u < n; ++u) coef += wgd[pct(s, u)] * t[u];
    for (long b = 0; b < dim; ++b) out(row_map[s][b], b) += coef;
  }
  return out;
}

}  // namespace haarcorr
