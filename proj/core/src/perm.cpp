#include "haarcorr/perm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace haarcorr {

namespace {

void check_degree(int k) {
  if (k < 1 || k > kMaxDegree)
    throw std::invalid_argument("permutation degree must be in [1, " + std::to_string(kMaxDegree) +
                                "], got " + std::to_string(k));
}

}  // namespace

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  check_degree(static_cast<int>(img_.size()));
  std::vector<bool> seen(img_.size(), false);
  for (int v : img_) {
    if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v])
      throw std::invalid_argument("permutation images must be a bijection on {0..k-1}");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int degree) {
  check_degree(degree);
  std::vector<int> img(degree);
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycle(int degree, const std::vector<int>& cycle) {
  Permutation p = identity(degree);
  if (cycle.empty()) return p;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    int from = cycle[i];
    int to = cycle[(i + 1) % cycle.size()];
    if (from < 0 || from >= degree) throw std::invalid_argument("cycle entry out of range");
    p.img_[from] = to;
  }
  // Validate via the checking constructor.
  return Permutation(p.img_);
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) inv[img_[i]] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != static_cast<int>(i)) return false;
  return true;
}

Permutation compose(const Permutation& sigma, const Permutation& tau) {
  if (sigma.degree() != tau.degree())
    throw std::invalid_argument("compose: degree mismatch " + std::to_string(sigma.degree()) +
                                " vs " + std::to_string(tau.degree()));
  std::vector<int> img(sigma.degree());
  for (int i = 0; i < sigma.degree(); ++i) img[i] = sigma(tau(i));
  return Permutation(std::move(img));
}

int cycle_count(const Permutation& p) {
  int k = p.degree();
  int count = 0;
  std::uint32_t seen = 0;  // degree <= 20 fits in a bit mask
  for (int i = 0; i < k; ++i) {
    if (seen & (1u << i)) continue;
    ++count;
    int j = i;
    while (!(seen & (1u << j))) {
      seen |= 1u << j;
      j = p(j);
    }
  }
  return count;
}

int cycle_count_compose(const Permutation& sigma, const Permutation& tau) {
  if (sigma.degree() != tau.degree()) throw std::invalid_argument("cycle_count_compose: degree mismatch");
  int k = sigma.degree();
  int count = 0;
  std::uint32_t seen = 0;
  for (int i = 0; i < k; ++i) {
    if (seen & (1u << i)) continue;
    ++count;
    int j = i;
    while (!(seen & (1u << j))) {
      seen |= 1u << j;
      j = sigma(tau(j));
    }
  }
  return count;
}

int cycle_count_compose_inv(const Permutation& sigma, const Permutation& tau) {
  // #(sigma tau^{-1}) without forming tau^{-1}: follow j -> sigma(tau^{-1}(j))
  // by precomputing tau^{-1} on the stack.
  if (sigma.degree() != tau.degree())
    throw std::invalid_argument("cycle_count_compose_inv: degree mismatch");
  int k = sigma.degree();
  int inv[kMaxDegree];
  for (int i = 0; i < k; ++i) inv[tau(i)] = i;
  int count = 0;
  std::uint32_t seen = 0;
  for (int i = 0; i < k; ++i) {
    if (seen & (1u << i)) continue;
    ++count;
    int j = i;
    while (!(seen & (1u << j))) {
      seen |= 1u << j;
      j = sigma(inv[j]);
    }
  }
  return count;
}

CycleType cycle_type(const Permutation& p) {
  int k = p.degree();
  CycleType type;
  std::uint32_t seen = 0;
  for (int i = 0; i < k; ++i) {
    if (seen & (1u << i)) continue;
    int len = 0;
    int j = i;
    while (!(seen & (1u << j))) {
      seen |= 1u << j;
      j = p(j);
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.begin(), type.end(), std::greater<int>());
  return type;
}

namespace {
void partitions_rec(int remaining, int max_part, CycleType& cur, std::vector<CycleType>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(remaining - part, part, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<CycleType> partitions(int k) {
  check_degree(k);
  std::vector<CycleType> out;
  CycleType cur;
  partitions_rec(k, k, cur, out);
  return out;
}

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

PermIndex index_of(const Permutation& p) {
  // Lehmer code: ordinal under lexicographic order of image sequences.
  int k = p.degree();
  std::uint64_t ord = 0;
  for (int i = 0; i < k; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < k; ++j)
      if (p(j) < p(i)) ++smaller;
    ord += static_cast<std::uint64_t>(smaller) * factorial(k - 1 - i);
  }
  return {ord};
}

Permutation permutation_at(int degree, std::uint64_t ordinal) {
  check_degree(degree);
  if (ordinal >= factorial(degree)) throw std::invalid_argument("permutation ordinal out of range");
  std::vector<int> pool(degree);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> img;
  img.reserve(degree);
  for (int i = degree - 1; i >= 0; --i) {
    std::uint64_t f = factorial(i);
    std::size_t pos = static_cast<std::size_t>(ordinal / f);
    ordinal %= f;
    img.push_back(pool[pos]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  return Permutation(std::move(img));
}

std::vector<Permutation> all_permutations(int k) {
  check_degree(k);
  if (k > kMaxMaterializedDegree)
    throw std::invalid_argument("all_permutations materializes k! elements only for k <= " +
                                std::to_string(kMaxMaterializedDegree) +
                                "; use for_each_permutation for larger degrees");
  std::vector<Permutation> out;
  out.reserve(factorial(k));
  std::vector<int> img(k);
  std::iota(img.begin(), img.end(), 0);
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

void for_each_permutation(int k, const std::function<void(const Permutation&)>& fn) {
  check_degree(k);
  std::vector<int> img(k);
  std::iota(img.begin(), img.end(), 0);
  do {
    fn(Permutation(img));
  } while (std::next_permutation(img.begin(), img.end()));
}

Eigen::MatrixXcd rep_matrix(const Permutation& sigma, int q) {
  if (q < 1) throw std::invalid_argument("rep_matrix: q must be >= 1");
  int k = sigma.degree();
  double sized = std::pow(static_cast<double>(q), k);
  if (sized > (1 << 22)) throw std::invalid_argument("rep_matrix: q^k exceeds memory budget");
  long dim = 1;
  for (int i = 0; i < k; ++i) dim *= q;
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(dim, dim);
  Permutation inv = sigma.inverse();
  std::vector<int> digits(k, 0);
  for (long col = 0; col < dim; ++col) {
    // col encodes (i_1..i_k) with i_1 slowest; row has j_m = i_{sigma^{-1}(m)}.
    long row = 0;
    for (int m = 0; m < k; ++m) row = row * q + digits[inv(m)];
    P(row, col) = 1.0;
    for (int m = k - 1; m >= 0; --m) {
      if (++digits[m] < q) break;
      digits[m] = 0;
    }
  }
  return P;
}

Int trace_pair(const Permutation& sigma, const Permutation& tau, long q) {
  return ipow(Int(q), static_cast<unsigned>(cycle_count_compose(sigma, tau)));
}

}  // namespace haarcorr
