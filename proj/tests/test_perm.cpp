#include <doctest.h>

#include <algorithm>

#include "haarcorr/linalg.hpp"
#include "haarcorr/perm.hpp"
#include "haarcorr/rng.hpp"

using namespace haarcorr;

namespace {

// Independent brute-force enumeration of all bijections on {0..k-1}.
void collect_bijections(int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v < k; ++v) {
    if (std::find(cur.begin(), cur.end(), v) != cur.end()) continue;
    cur.push_back(v);
    collect_bijections(k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST_SUITE("perm") {

TEST_CASE("enumeration order and count") {
  auto s1 = all_permutations(1);
  REQUIRE(s1.size() == 1);
  CHECK(s1[0].is_identity());

  auto s2 = all_permutations(2);
  REQUIRE(s2.size() == 2);
  CHECK(s2[0].is_identity());
  CHECK(s2[1] == Permutation::from_cycle(2, {0, 1}));

  // k = 3 against an independent generator; lexicographic by image sequence.
  auto s3 = all_permutations(3);
  std::vector<std::vector<int>> oracle;
  std::vector<int> cur;
  collect_bijections(3, cur, oracle);
  std::sort(oracle.begin(), oracle.end());
  REQUIRE(s3.size() == oracle.size());
  for (std::size_t i = 0; i < oracle.size(); ++i) CHECK(s3[i].images() == oracle[i]);
  CHECK(s3[0].is_identity());
}

TEST_CASE("lazy iteration matches materialization") {
  auto s4 = all_permutations(4);
  std::size_t i = 0;
  for_each_permutation(4, [&](const Permutation& p) {
    REQUIRE(i < s4.size());
    CHECK(p == s4[i]);
    ++i;
  });
  CHECK(i == s4.size());
}

TEST_CASE("ordinal round trip") {
  for (int k : {1, 2, 3, 4}) {
    auto perms = all_permutations(k);
    for (std::size_t i = 0; i < perms.size(); ++i) {
      CHECK(index_of(perms[i]).ordinal == i);
      CHECK(permutation_at(k, i) == perms[i]);
    }
  }
}

TEST_CASE("compose") {
  auto e = Permutation::identity(2);
  auto swap = Permutation::from_cycle(2, {0, 1});
  CHECK(compose(swap, swap) == e);

  auto sigma = Permutation::from_cycle(3, {0, 1, 2});
  CHECK(compose(sigma, Permutation::identity(3)) == sigma);
  CHECK(compose(Permutation::identity(3), sigma) == sigma);

  // (0 1 2) after (0 1) maps 0->2, 1->1, 2->0.
  auto tau = Permutation::from_cycle(3, {0, 1});
  CHECK(compose(sigma, tau) == Permutation::from_cycle(3, {0, 2}));

  // Associativity on all of S_3.
  auto s3 = all_permutations(3);
  for (const auto& a : s3)
    for (const auto& b : s3)
      for (const auto& c : s3)
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));

  CHECK_THROWS_AS(compose(e, sigma), std::invalid_argument);
}

TEST_CASE("invalid images rejected") {
  CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation(std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("cycle count and type") {
  CHECK(cycle_count(Permutation::identity(3)) == 3);
  CHECK(cycle_count(Permutation::from_cycle(3, {0, 1, 2})) == 1);

  Permutation p({1, 0, 3, 2, 4});  // (0 1)(2 3) in S_5
  CHECK(cycle_count(p) == 3);
  CHECK(cycle_type(p) == CycleType{2, 2, 1});

  auto s4 = all_permutations(4);
  for (const auto& a : s4)
    for (const auto& b : s4) {
      CHECK(cycle_count_compose(a, b) == cycle_count(compose(a, b)));
      CHECK(cycle_count_compose_inv(a, b) == cycle_count(compose(a, b.inverse())));
    }
}

TEST_CASE("cycle count of products is a class function") {
  auto s4 = all_permutations(4);
  RngStream rng(11, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto& a = s4[rng.next_u64() % s4.size()];
    const auto& b = s4[rng.next_u64() % s4.size()];
    const auto& rho = s4[rng.next_u64() % s4.size()];
    auto prod = compose(a, b.inverse());
    auto conj = compose(compose(rho, prod), rho.inverse());
    CHECK(cycle_count(prod) == cycle_count(conj));
    CHECK(cycle_type(prod) == cycle_type(conj));
  }
}

TEST_CASE("partitions") {
  CHECK(partitions(1).size() == 1);
  CHECK(partitions(4).size() == 5);
  CHECK(partitions(6).size() == 11);
  for (const auto& part : partitions(5)) {
    int sum = 0;
    for (std::size_t i = 0; i < part.size(); ++i) {
      sum += part[i];
      if (i) CHECK(part[i] <= part[i - 1]);
    }
    CHECK(sum == 5);
  }
}

TEST_CASE("rep_matrix basics") {
  auto e = Permutation::identity(2);
  CHECK(max_abs(rep_matrix(e, 3) - Eigen::MatrixXcd::Identity(9, 9)) == 0.0);

  // Two-site swap at q = 2 is the 4x4 SWAP matrix.
  Eigen::MatrixXcd swap(4, 4);
  swap << 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1;
  CHECK(max_abs(rep_matrix(Permutation::from_cycle(2, {0, 1}), 2) - swap) == 0.0);
}

TEST_CASE("rep_matrix is a homomorphism with transpose = inverse") {
  for (int q : {2, 3}) {
    auto s3 = all_permutations(3);
    for (const auto& a : s3)
      for (const auto& b : s3) {
        Eigen::MatrixXcd lhs = rep_matrix(a, q) * rep_matrix(b, q);
        Eigen::MatrixXcd rhs = rep_matrix(compose(a, b), q);
        CHECK(max_abs(lhs - rhs) == 0.0);
      }
    for (const auto& a : s3)
      CHECK(max_abs(rep_matrix(a.inverse(), q) - rep_matrix(a, q).transpose()) == 0.0);
  }
  // Spot checks at k = 4 (81x81 at q = 3 is already large for all pairs).
  auto s4 = all_permutations(4);
  RngStream rng(3, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto& a = s4[rng.next_u64() % s4.size()];
    const auto& b = s4[rng.next_u64() % s4.size()];
    CHECK(max_abs(rep_matrix(a, 3) * rep_matrix(b, 3) - rep_matrix(compose(a, b), 3)) == 0.0);
  }
}

TEST_CASE("rep_matrix trace equals q^cycles") {
  RngStream rng(5, 0);
  for (int q : {2, 3}) {
    auto s3 = all_permutations(3);
    for (const auto& p : s3) {
      double tr = rep_matrix(p, q).trace().real();
      CHECK(tr == doctest::Approx(std::pow(q, cycle_count(p))));
    }
  }
}

TEST_CASE("rep_matrix splits over tensor factors") {
  // P_sigma^{(q q')} = P_sigma^{(q)} (x) P_sigma^{(q')} after regrouping the
  // composite digits i_m = a_m q' + b_m into (a digits, b digits).
  for (int q : {2, 3})
    for (int qp : {2, 3})
      for (int k : {2, 3}) {
        auto perms = all_permutations(k);
        long dq = 1, dqp = 1, dqq = 1;
        for (int i = 0; i < k; ++i) {
          dq *= q;
          dqp *= qp;
          dqq *= q * qp;
        }
        for (const auto& p : perms) {
          Eigen::MatrixXcd big = rep_matrix(p, q * qp);
          Eigen::MatrixXcd pa = rep_matrix(p, q);
          Eigen::MatrixXcd pb = rep_matrix(p, qp);
          // Compare entrywise through the digit regrouping.
          auto split = [&](long composite, long& ai, long& bi) {
            std::vector<long> a(k), b(k);
            for (int m = k - 1; m >= 0; --m) {
              long digit = composite % (q * qp);
              composite /= q * qp;
              a[m] = digit / qp;
              b[m] = digit % qp;
            }
            ai = 0;
            bi = 0;
            for (int m = 0; m < k; ++m) {
              ai = ai * q + a[m];
              bi = bi * qp + b[m];
            }
          };
          bool ok = true;
          for (long r = 0; r < dqq && ok; ++r)
            for (long c = 0; c < dqq && ok; ++c) {
              long ra, rb, ca, cb;
              split(r, ra, rb);
              split(c, ca, cb);
              if (big(r, c) != pa(ra, ca) * pb(rb, cb)) ok = false;
            }
          CHECK(ok);
        }
      }
}

TEST_CASE("trace_pair") {
  auto e2 = Permutation::identity(2);
  CHECK(trace_pair(e2, e2, 3) == 9);
  auto swap = Permutation::from_cycle(2, {0, 1});
  CHECK(trace_pair(swap, swap, 2) == 4);

  auto s3 = all_permutations(3);
  for (const auto& a : s3)
    for (const auto& b : s3) {
      double mat = (rep_matrix(a, 2) * rep_matrix(b, 2)).trace().real();
      CHECK(Rat(trace_pair(a, b, 2)).get_d() == doctest::Approx(mat));
    }
}

TEST_CASE("materialization bound") {
  CHECK_THROWS_AS(all_permutations(9), std::invalid_argument);
  CHECK_THROWS_AS(all_permutations(0), std::invalid_argument);
  CHECK_THROWS_AS(all_permutations(21), std::invalid_argument);
}

}  // TEST_SUITE
