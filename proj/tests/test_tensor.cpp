#include <doctest.h>

#include <map>

#include "haarcorr/perm.hpp"
#include "haarcorr/rng.hpp"
#include "haarcorr/tensor.hpp"

using namespace haarcorr;

namespace {

ComplexTensor random_tensor(std::vector<Leg> legs, RngStream& rng) {
  ComplexTensor t(std::move(legs));
  for (auto& v : t.data()) v = rng.complex_normal();
  return t;
}

// Independent full-sum evaluation of a network: every bond index is summed
// explicitly, one term at a time.
std::complex<double> naive_contract(const std::vector<ComplexTensor>& net,
                                    const std::vector<std::pair<LegRef, LegRef>>& pairings) {
  // Assign every (tensor, leg) either to a bond id or fail (all legs must be
  // paired for this scalar oracle).
  std::map<std::pair<int, std::string>, int> bond_of;
  int bonds = 0;
  std::vector<long> bond_dim;
  for (const auto& [a, b] : pairings) {
    bond_of[{a.tensor, a.leg}] = bonds;
    bond_of[{b.tensor, b.leg}] = bonds;
    bond_dim.push_back(net[static_cast<std::size_t>(a.tensor)].dim(a.leg));
    ++bonds;
  }
  std::vector<long> idx(static_cast<std::size_t>(bonds), 0);
  std::complex<double> total = 0;
  while (true) {
    std::complex<double> term = 1.0;
    for (std::size_t t = 0; t < net.size(); ++t) {
      std::vector<long> pos;
      for (const auto& leg : net[t].legs())
        pos.push_back(idx[static_cast<std::size_t>(bond_of.at({static_cast<int>(t), leg.name}))]);
      term *= net[t].at(pos);
    }
    total += term;
    std::size_t i = idx.size();
    while (i-- > 0) {
      if (++idx[i] < bond_dim[i]) break;
      idx[i] = 0;
      if (i == 0) return total;
    }
    if (idx.size() == 0) return total;
  }
}

}  // namespace

TEST_SUITE("tensor") {

TEST_CASE("identity wires contract to an identity") {
  auto id1 = ComplexTensor::delta("a", "b", 3);
  auto id2 = ComplexTensor::delta("c", "d", 3);
  ComplexTensor out = contract({id1, id2}, {{{0, "b"}, {1, "c"}}}, {{0, "a"}, {1, "d"}});
  Eigen::MatrixXcd m = out.to_matrix({"a"}, {"d"});
  CHECK((m - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("self-pairing traces a permutation operator") {
  for (const auto& sigma : all_permutations(2)) {
    Eigen::MatrixXcd p = rep_matrix(sigma, 2);
    ComplexTensor t = ComplexTensor::from_matrix(p, "row", "col");
    ComplexTensor tr = contract({t}, {{{0, "row"}, {0, "col"}}}, {});
    CHECK(tr.to_scalar().real() == doctest::Approx(std::pow(2.0, cycle_count(sigma))));
  }
}

TEST_CASE("three-tensor network equals full index sum") {
  RngStream rng(7, 0);
  auto a = random_tensor({{"i", 2}, {"j", 3}, {"k", 2}}, rng);
  auto b = random_tensor({{"j2", 3}, {"k2", 2}, {"r", 4}}, rng);
  auto c = random_tensor({{"r2", 4}, {"i2", 2}}, rng);
  std::vector<std::pair<LegRef, LegRef>> pairings{{{0, "j"}, {1, "j2"}},
                                                  {{0, "k"}, {1, "k2"}},
                                                  {{1, "r"}, {2, "r2"}},
                                                  {{2, "i2"}, {0, "i"}}};
  std::vector<ComplexTensor> net{a, b, c};
  std::complex<double> greedy = contract(net, pairings, {}).to_scalar();
  std::complex<double> naive = naive_contract(net, pairings);
  CHECK(std::abs(greedy - naive) <= 1e-12 * std::max(1.0, std::abs(naive)));
}

TEST_CASE("multilinearity in each input") {
  RngStream rng(9, 0);
  auto a = random_tensor({{"i", 3}, {"j", 3}}, rng);
  auto b = random_tensor({{"p", 3}, {"q", 3}}, rng);
  std::vector<std::pair<LegRef, LegRef>> pairings{{{0, "j"}, {1, "p"}}, {{0, "i"}, {1, "q"}}};
  std::complex<double> base = contract({a, b}, pairings, {}).to_scalar();
  ComplexTensor scaled = a;
  std::complex<double> factor{2.5, -1.0};
  scaled *= factor;
  std::complex<double> out = contract({scaled, b}, pairings, {}).to_scalar();
  CHECK(std::abs(out - factor * base) < 1e-12 * std::abs(base));
}

TEST_CASE("vectorization convention is row index first") {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  ComplexTensor t = ComplexTensor::from_matrix(m, "row", "col");
  // vec(|i><j|) = |i> (x) |j>: entry (i, j) sits at linear index i * 2 + j.
  CHECK(t.data()[1] == std::complex<double>(2.0, 0.0));
  CHECK(t.data()[2] == std::complex<double>(3.0, 0.0));

  // Contract-then-vectorize equals vectorize-then-contract: (M N) as a
  // matrix product versus a tensor bond over (col of M, row of N).
  RngStream rng(13, 0);
  auto x = random_tensor({{"r", 3}, {"c", 3}}, rng);
  auto y = random_tensor({{"r", 3}, {"c", 3}}, rng);
  Eigen::MatrixXcd mx = x.to_matrix({"r"}, {"c"});
  Eigen::MatrixXcd my = y.to_matrix({"r"}, {"c"});
  ComplexTensor prod = contract({x, y}, {{{0, "c"}, {1, "r"}}}, {{0, "r"}, {1, "c"}});
  CHECK((prod.to_matrix({"r"}, {"c"}) - mx * my).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("contraction order independence") {
  // A chain of four tensors; the greedy order must agree with a forced
  // left-to-right order.
  RngStream rng(15, 0);
  std::vector<ComplexTensor> net;
  net.push_back(random_tensor({{"a", 2}, {"b", 5}}, rng));
  net.push_back(random_tensor({{"b", 5}, {"c", 3}}, rng));
  net.push_back(random_tensor({{"c", 3}, {"d", 7}}, rng));
  net.push_back(random_tensor({{"d", 7}, {"a", 2}}, rng));
  std::vector<std::pair<LegRef, LegRef>> pairings{{{0, "b"}, {1, "b"}},
                                                  {{1, "c"}, {2, "c"}},
                                                  {{2, "d"}, {3, "d"}},
                                                  {{3, "a"}, {0, "a"}}};
  std::complex<double> greedy = contract(net, pairings, {}).to_scalar();

  ComplexTensor acc = contract_pair(net[0], net[1], {{"b", "b"}});
  acc = contract_pair(acc, net[2], {{"c", "c"}});
  acc = contract_pair(acc, net[3], {{"d", "d"}, {"a", "a"}});
  CHECK(std::abs(greedy - acc.to_scalar()) < 1e-12 * std::abs(greedy));
}

TEST_CASE("errors") {
  auto a = ComplexTensor::delta("x", "y", 2);
  auto b = ComplexTensor::delta("u", "v", 3);
  CHECK_THROWS_AS(contract({a, b}, {{{0, "y"}, {1, "u"}}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(contract({a}, {}, {}), std::invalid_argument);  // dangling mismatch
  CHECK_THROWS_AS((ComplexTensor{{{"x", 2}, {"x", 3}}}), std::invalid_argument);
}

}  // TEST_SUITE
