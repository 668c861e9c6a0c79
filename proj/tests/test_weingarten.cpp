#include <doctest.h>

#include "haarcorr/linalg.hpp"
#include "haarcorr/mc.hpp"
#include "haarcorr/rng.hpp"
#include "haarcorr/weingarten.hpp"

using namespace haarcorr;

namespace {

// Exact dense Weingarten matrix from the class table.
std::vector<std::vector<Rat>> dense_wg(const WeingartenTable& t) {
  auto perms = all_permutations(t.k());
  std::size_t n = perms.size();
  std::vector<std::vector<Rat>> w(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w[i][j] = t(compose(perms[i], perms[j].inverse()));
  return w;
}

}  // namespace

TEST_SUITE("weingarten") {

TEST_CASE("gram examples") {
  GramMatrix g22 = gram(2, 2);
  CHECK(g22.entries[0][0] == 4);
  CHECK(g22.entries[0][1] == 2);
  CHECK(g22.entries[1][0] == 2);
  CHECK(g22.entries[1][1] == 4);

  GramMatrix g1 = gram(1, 5);
  CHECK(g1.entries.size() == 1);
  CHECK(g1.entries[0][0] == 5);

  GramMatrix g32 = gram(3, 2);
  Int row_sum_0(0);
  for (const auto& v : g32.entries[0]) row_sum_0 += v;
  for (std::size_t i = 0; i < g32.entries.size(); ++i) {
    CHECK(g32.entries[i][i] == 8);
    Int row_sum(0);
    for (const auto& v : g32.entries[i]) row_sum += v;
    CHECK(row_sum == row_sum_0);
    for (std::size_t j = 0; j < g32.entries.size(); ++j)
      CHECK(g32.entries[i][j] == g32.entries[j][i]);
  }
}

TEST_CASE("closed forms at k = 1 and k = 2") {
  for (long q : {2, 3, 4, 6}) {
    CHECK(weingarten(Permutation::identity(1), q) == Rat(1, q));
    Rat e2 = weingarten(CycleType{1, 1}, 2, q);
    Rat sw = weingarten(CycleType{2}, 2, q);
    CHECK(e2 == Rat(1, q * q - 1));
    CHECK(sw == Rat(-1, q * (q * q - 1)));
  }
  // The q = 4 values quoted as 1/15 and -1/60.
  CHECK(weingarten(CycleType{1, 1}, 2, 4) == Rat(1, 15));
  CHECK(weingarten(CycleType{2}, 2, 4) == Rat(-1, 60));
}

TEST_CASE("exact inverse of the Gram matrix for k <= q") {
  for (auto [k, q] : std::vector<std::pair<int, long>>{{2, 2}, {2, 5}, {3, 3}, {3, 5}, {4, 4}}) {
    GramMatrix g = gram(k, q);
    WeingartenTable t(k, q);
    auto w = dense_wg(t);
    std::size_t n = g.entries.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rat acc(0);
        for (std::size_t l = 0; l < n; ++l) acc += Rat(g.entries[i][l]) * w[l][j];
        CHECK(acc == (i == j ? Rat(1) : Rat(0)));
      }
  }
}

TEST_CASE("pseudo-inverse for k > q") {
  // G is singular; the table must satisfy the Moore-Penrose identities
  // G W G = G and W G W = W exactly.
  int k = 3;
  long q = 2;
  GramMatrix g = gram(k, q);
  WeingartenTable t(k, q);
  auto w = dense_wg(t);
  std::size_t n = g.entries.size();
  auto mul = [&](const std::vector<std::vector<Rat>>& a, const std::vector<std::vector<Rat>>& b) {
    std::vector<std::vector<Rat>> c(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
  };
  std::vector<std::vector<Rat>> gr(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gr[i][j] = Rat(g.entries[i][j]);
  auto gwg = mul(mul(gr, w), gr);
  auto wgw = mul(mul(w, gr), w);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(gwg[i][j] == gr[i][j]);
      CHECK(wgw[i][j] == w[i][j]);
    }
}

TEST_CASE("class constancy") {
  WeingartenTable t(3, 4);
  auto s3 = all_permutations(3);
  RngStream rng(17, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto& sigma = s3[rng.next_u64() % s3.size()];
    const auto& rho = s3[rng.next_u64() % s3.size()];
    auto conj = compose(compose(rho, sigma), rho.inverse());
    CHECK(t(sigma) == t(conj));
  }
}

TEST_CASE("twirl at k = 1 is the depolarizing projector") {
  RngStream rng(23, 0);
  for (int q : {2, 3}) {
    Eigen::MatrixXcd x(q, q);
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) x(i, j) = rng.complex_normal();
    Eigen::MatrixXcd tw = twirl(x, 1, q);
    Eigen::MatrixXcd expected = (x.trace() / static_cast<double>(q)) *
                                Eigen::MatrixXcd::Identity(q, q);
    CHECK(max_abs(tw - expected) < 1e-12);
  }
}

TEST_CASE("permutation operators are twirl fixed points for k <= q") {
  auto s2 = all_permutations(2);
  for (const auto& rho : s2) {
    Eigen::MatrixXcd p = rep_matrix(rho, 3);
    CHECK(max_abs(twirl(p, 2, 3) - p) < 1e-12);
  }
}

TEST_CASE("twirl is an idempotent trace-preserving projector") {
  RngStream rng(29, 0);
  Eigen::MatrixXcd x(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) x(i, j) = rng.complex_normal();
  Eigen::MatrixXcd t1 = twirl(x, 2, 2);
  Eigen::MatrixXcd t2 = twirl(t1, 2, 2);
  CHECK(max_abs(t2 - t1) < 1e-12);
  CHECK(std::abs(t1.trace() - x.trace()) < 1e-12);

  // The output commutes with U (x) U for Haar U.
  Eigen::MatrixXcd u = haar_unitary(2, rng).m;
  Eigen::MatrixXcd uu = kron(u, u);
  CHECK(max_abs(uu * t1 - t1 * uu) < 1e-11);
}

TEST_CASE("twirl matches Monte Carlo sampling") {
  RngStream rng(31, 0);
  Eigen::MatrixXcd x(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) x(i, j) = rng.complex_normal();
  long n = 4000;
  Eigen::MatrixXcd est = mc_twirl(x, 2, 2, n, 12345);
  Eigen::MatrixXcd exact = twirl(x, 2, 2);
  double bound = 5.0 * x.norm() / std::sqrt(static_cast<double>(n));
  CHECK((est - exact).norm() < bound);
}

TEST_CASE("unsupported degree is refused") {
  CHECK_THROWS_AS(WeingartenTable(7, 4), std::invalid_argument);
  CHECK_THROWS_AS(gram(7, 4), std::invalid_argument);
}

}  // TEST_SUITE
