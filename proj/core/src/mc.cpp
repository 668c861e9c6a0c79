#include "haarcorr/mc.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace haarcorr {

namespace {

// Fixed-order pairwise sum; the reduction tree depends only on the length.
std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v, std::size_t lo,
                                  std::size_t hi) {
  if (hi - lo == 1) return v[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

McEstimate reduce_samples(const std::vector<std::complex<double>>& samples, std::uint64_t seed,
                          double wall_s) {
  std::size_t n = samples.size();
  McEstimate est;
  est.n_samples = static_cast<std::int64_t>(n);
  est.seed = seed;
  est.wall_time_s = wall_s;
  est.mean = pairwise_sum(samples, 0, n) / static_cast<double>(n);
  std::vector<std::complex<double>> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::complex<double> delta = samples[i] - est.mean;
    sq[i] = {delta.real() * delta.real(), delta.imag() * delta.imag()};
  }
  std::complex<double> var = pairwise_sum(sq, 0, n) / static_cast<double>(n - 1);
  est.stderr_re = std::sqrt(var.real() / static_cast<double>(n));
  est.stderr_im = std::sqrt(var.imag() / static_cast<double>(n));
  return est;
}

void parallel_samples(std::int64_t n_samples, int n_threads,
                      const std::function<std::complex<double>(std::int64_t)>& one,
                      std::vector<std::complex<double>>& out) {
  out.resize(static_cast<std::size_t>(n_samples));
  unsigned hw = std::thread::hardware_concurrency();
  int workers = n_threads > 0 ? n_threads : static_cast<int>(hw ? hw : 4);
  if (workers > n_samples) workers = static_cast<int>(n_samples);
  std::vector<std::thread> pool;
  std::atomic<std::int64_t> next{0};
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      while (true) {
        std::int64_t i = next.fetch_add(64);
        if (i >= n_samples) break;
        std::int64_t hi = std::min(i + 64, n_samples);
        for (std::int64_t j = i; j < hi; ++j) out[static_cast<std::size_t>(j)] = one(j);
      }
    });
  for (auto& th : pool) th.join();
}

std::complex<double> ipow_c(std::complex<double> v, int k) {
  std::complex<double> acc = 1.0;
  for (int i = 0; i < k; ++i) acc *= v;
  return acc;
}

}  // namespace

McEstimate mc_mps_moment(const MpsEnsembleSpec& spec, int k, const Operator& a, const Operator& b,
                         std::int64_t n_samples, std::uint64_t seed, int n_threads) {
  spec.validate();
  if (n_samples < 2) throw std::invalid_argument("mc_mps_moment: need n_samples >= 2");
  if (k < 1) throw std::invalid_argument("mc_mps_moment: need k >= 1");
  CorrelationCase cse = classify(spec.geometry.x, spec.geometry.r, spec.geometry.t);
  long d = spec.d, D = spec.D;

  std::function<std::complex<double>(std::int64_t)> one;
  if (cse == CorrelationCase::kBoundaryD1) {
    one = [=, &a, &b](std::int64_t i) {
      RngStream rng(seed, static_cast<std::uint64_t>(i));
      Eigen::MatrixXcd u = haar_unitary(d * D, rng).m;
      return ipow_c(correlation_d1(u, a.m, b.m, d, D), k);
    };
  } else if (cse == CorrelationCase::kGenericD2) {
    long s = chain_length_s(spec.geometry.r, spec.geometry.t);
    if (s < 1)
      throw std::invalid_argument("mc_mps_moment: the deterministic kernel needs s >= 1");
    one = [=, &a, &b](std::int64_t i) {
      RngStream rng(seed, static_cast<std::uint64_t>(i));
      DisorderedMps mps = DisorderedMps::sample(d, D, s + 2, rng);
      return ipow_c(correlation_d2(mps, a.m, b.m, s), k);
    };
  } else {
    throw std::invalid_argument("mc_mps_moment: geometry has an identically vanishing case");
  }

  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::complex<double>> samples;
  parallel_samples(n_samples, n_threads, one, samples);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return reduce_samples(samples, seed, wall);
}

McEstimate mc_peps_moment(const PepsEnsembleSpec& spec, int k, const Operator& a,
                          const Operator& b, std::int64_t n_samples, std::uint64_t seed,
                          int n_threads) {
  spec.validate();
  if (n_samples < 2) throw std::invalid_argument("mc_peps_moment: need n_samples >= 2");
  if (k < 1) throw std::invalid_argument("mc_peps_moment: need k >= 1");
  if (spec.geometry.t != 1 || spec.geometry.r2 != 0)
    throw std::invalid_argument("mc_peps_moment: implemented templates have t = 1, r2 = 0");
  CorrelationCase cse = classify_peps(spec.geometry.x1, spec.geometry.x2, spec.geometry.r1,
                                      spec.geometry.r2, spec.geometry.t);
  long d = spec.d, D = spec.D;

  std::function<std::complex<double>(std::int64_t)> one;
  if (cse == CorrelationCase::kBoundaryD1) {
    one = [=, &a, &b](std::int64_t i) {
      RngStream rng(seed, static_cast<std::uint64_t>(i));
      auto column = sample_peps_column(d, D, kPepsRowsT1, rng);
      return ipow_c(correlation_d1_peps(column, a.m, b.m), k);
    };
  } else if (cse == CorrelationCase::kGenericD2) {
    long s = chain_length_s(spec.geometry.r1, spec.geometry.t);
    if (s < 1)
      throw std::invalid_argument("mc_peps_moment: the deterministic kernel needs s >= 1");
    one = [=, &a, &b](std::int64_t i) {
      RngStream rng(seed, static_cast<std::uint64_t>(i));
      PepsGrid grid = sample_peps_grid(d, D, kPepsRowsT1, s + 2, rng);
      return ipow_c(correlation_d2_peps(grid, a.m, b.m, s), k);
    };
  } else {
    throw std::invalid_argument("mc_peps_moment: geometry has an identically vanishing case");
  }

  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::complex<double>> samples;
  parallel_samples(n_samples, n_threads, one, samples);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return reduce_samples(samples, seed, wall);
}

Eigen::MatrixXcd mc_twirl(const Eigen::MatrixXcd& x, int k, int q, std::int64_t n_samples,
                          std::uint64_t seed) {
  long dim = 1;
  for (int i = 0; i < k; ++i) dim *= q;
  if (dim > 4096) throw std::invalid_argument("mc_twirl: q^k exceeds memory budget");
  if (x.rows() != dim || x.cols() != dim)
    throw std::invalid_argument("mc_twirl: X must be square of dimension q^k");
  if (n_samples < 1) throw std::invalid_argument("mc_twirl: need n_samples >= 1");

  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::int64_t i = 0; i < n_samples; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    Eigen::MatrixXcd u = haar_unitary(q, rng).m;
    Eigen::MatrixXcd uk = u;
    for (int j = 1; j < k; ++j) uk = kron(uk, u);
    acc += uk * x * uk.adjoint();
  }
  return acc / static_cast<double>(n_samples);
}

ComparisonReport compare(const MomentResult& analytic, const McEstimate& mc, double threshold) {
  if (threshold <= 0) throw std::invalid_argument("compare: threshold must be positive");
  ComparisonReport rep;
  rep.analytic = analytic;
  rep.mc = mc;
  rep.threshold = threshold;
  double dre = std::abs(analytic.value.real() - mc.mean.real());
  double dim = std::abs(analytic.value.imag() - mc.mean.imag());
  auto zpart = [](double delta, double se) {
    if (se > 0) return delta / se;
    return delta == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  };
  rep.z_score = std::max(zpart(dre, mc.stderr_re), zpart(dim, mc.stderr_im));
  rep.pass = rep.z_score <= threshold;
  return rep;
}

}  // namespace haarcorr
