#include <doctest.h>

#include <cmath>

#include "haarcorr/linalg.hpp"
#include "haarcorr/rng.hpp"

using namespace haarcorr;

TEST_SUITE("linalg_rng") {

TEST_CASE("stream determinism and separation") {
  RngStream a(42, 3), b(42, 3), c(42, 4);
  for (int i = 0; i < 100; ++i) {
    std::uint64_t va = a.next_u64();
    CHECK(va == b.next_u64());
    CHECK(va != c.next_u64());
  }
  RngStream u1(42, 3);
  RngStream u2(42, 3);
  Eigen::MatrixXcd m1 = haar_unitary(4, u1).m;
  Eigen::MatrixXcd m2 = haar_unitary(4, u2).m;
  CHECK((m1 - m2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("uniform and normal moments") {
  RngStream rng(1, 0);
  double sum = 0, sum2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double x = rng.normal();
    sum += x;
    sum2 += x * x;
  }
  double mean = sum / n;
  double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - 1.0) < 6.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("haar unitarity") {
  RngStream rng(2, 0);
  for (long q : {1, 2, 3, 8}) {
    UnitaryMatrix u = haar_unitary(q, rng);
    CHECK(unitarity_residual(u.m) < 1e-12);
  }
}

TEST_CASE("haar first moment: E|U_11|^2 = 1/q") {
  const int n = 100000;
  const long q = 2;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    RngStream rng(77, static_cast<std::uint64_t>(i));
    double v = std::norm(haar_unitary(q, rng).m(0, 0));
    sum += v;
    sum2 += v * v;
  }
  double mean = sum / n;
  double se = std::sqrt((sum2 / n - mean * mean) / n);
  CHECK(std::abs(mean - 1.0 / q) < 4.0 * se);
}

TEST_CASE("haar invariance: tr(VU) distributed like tr(U)") {
  const int n = 20000;
  const long q = 2;
  RngStream vstream(5, 0);
  Eigen::MatrixXcd v = haar_unitary(q, vstream).m;
  double m_u = 0, m_vu = 0, s_u = 0, s_vu = 0;
  for (int i = 0; i < n; ++i) {
    RngStream rng(6, static_cast<std::uint64_t>(i));
    Eigen::MatrixXcd u = haar_unitary(q, rng).m;
    double a = std::norm(u.trace());
    double b = std::norm((v * u).trace());
    m_u += a;
    m_vu += b;
    s_u += a * a;
    s_vu += b * b;
  }
  m_u /= n;
  m_vu /= n;
  double se = std::sqrt((s_u / n - m_u * m_u) / n) + std::sqrt((s_vu / n - m_vu * m_vu) / n);
  CHECK(std::abs(m_u - m_vu) < 4.0 * se);
}

TEST_CASE("leading_eigs on known spectra") {
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(4, 4);
  auto ev = leading_eigs(id, 4);
  REQUIRE(ev.size() == 4);
  for (const auto& v : ev) CHECK(std::abs(v - 1.0) < 1e-12);

  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(3, 3);
  diag(0, 0) = 1.0;
  diag(1, 1) = 0.5;
  diag(2, 2) = 0.25;
  auto top2 = leading_eigs(diag, 2);
  REQUIRE(top2.size() == 2);
  CHECK(std::abs(top2[0] - 1.0) < 1e-12);
  CHECK(std::abs(top2[1] - 0.5) < 1e-12);
}

}  // TEST_SUITE
