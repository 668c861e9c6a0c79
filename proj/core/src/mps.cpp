#include "haarcorr/mps.hpp"

#include <stdexcept>

namespace haarcorr {

CorrelationCase classify(long x, long r, long t) {
  if (r < 1 || t < 0) throw std::invalid_argument("classify: need r >= 1 and t >= 0");
  if (x % 2 == 0) return CorrelationCase::kZeroEvenX;
  if (r % 2 == 0) return CorrelationCase::kZeroEvenR;
  if (r < 4 * t + 1) return CorrelationCase::kZeroInsideLightcone;
  if (r == 4 * t + 1) return CorrelationCase::kBoundaryD1;
  return CorrelationCase::kGenericD2;
}

long chain_length_s(long r, long t) { return (r - 4 * t - 3) / 2; }

void MpsEnsembleSpec::validate() const {
  if (d < 2 || D < 1) throw std::invalid_argument("MpsEnsembleSpec: need d >= 2 and D >= 1");
  if (v < 1) throw std::invalid_argument("MpsEnsembleSpec: need v >= 1");
  if (classify(geometry.x, geometry.r, geometry.t) == CorrelationCase::kGenericD2) {
    long s = chain_length_s(geometry.r, geometry.t);
    if (v < s)
      throw std::invalid_argument("MpsEnsembleSpec: shift-invariance block v must be >= s = " +
                                  std::to_string(s));
  }
}

void DisorderedMps::validate() const {
  if (units.empty()) throw std::invalid_argument("DisorderedMps: no units");
  for (const auto& u : units) {
    if (u.rows() != unit_dim() || u.cols() != unit_dim())
      throw std::invalid_argument("DisorderedMps: unit has wrong dimension");
    if (unitarity_residual(u) > 1e-12)
      throw std::invalid_argument("DisorderedMps: unit is not unitary to 1e-12");
  }
}

DisorderedMps DisorderedMps::sample(long d, long D, long v, RngStream& rng) {
  DisorderedMps mps;
  mps.d = d;
  mps.D = D;
  mps.units.reserve(static_cast<std::size_t>(v));
  for (long j = 0; j < v; ++j) mps.units.push_back(haar_unitary(d * D, rng).m);
  return mps;
}

namespace {

// Folded gate blocks on the doubled bond space. Row (m, n) and column
// (m', n') composite indices are m * D + n; the ket layer uses U, the bra
// layer conj(U); physical legs are closed with traces or with the inserted
// operators.
//
// plain:   sum_{p, p'}      U_{(p,m),(p',m')} conj(U_{(p,n),(p',n')})
// a-cap:   sum_{p, p', q'}  A_{p'q'} U_{(p,m),(p',m')} conj(U_{(p,n),(q',n')})
// b-cap:   sum_{p, q, p'}   B_{pq}  U_{(p,m),(p',m')} conj(U_{(q,n),(p',n')})
// both:    sum_{p,q,p',q'}  B_{pq} A_{p'q'} U_{(p,m),(p',m')} conj(U_{(q,n),(q',n')})
Eigen::MatrixXcd folded_block(const Eigen::MatrixXcd& u, long d, long D,
                              const Eigen::MatrixXcd* a, const Eigen::MatrixXcd* b) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(D * D, D * D);
  for (long p = 0; p < d; ++p)
    for (long q = 0; q < d; ++q) {
      if (b == nullptr && q != p) continue;
      std::complex<double> wb = b ? (*b)(p, q) : 1.0;
      if (wb == 0.0) continue;
      for (long pp = 0; pp < d; ++pp)
        for (long qq = 0; qq < d; ++qq) {
          if (a == nullptr && qq != pp) continue;
          std::complex<double> w = wb * (a ? (*a)(pp, qq) : 1.0);
          if (w == 0.0) continue;
          for (long m = 0; m < D; ++m)
            for (long n = 0; n < D; ++n)
              for (long mp = 0; mp < D; ++mp)
                for (long np = 0; np < D; ++np)
                  out(m * D + n, mp * D + np) +=
                      w * u(p * D + m, pp * D + mp) * std::conj(u(q * D + n, qq * D + np));
        }
    }
  return out;
}

Eigen::VectorXcd cap_vector(long D) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(D * D);
  for (long i = 0; i < D; ++i) v(i * D + i) = 1.0;
  return v;
}

void check_op(const Eigen::MatrixXcd& a, long d, const char* name) {
  if (a.rows() != d || a.cols() != d)
    throw std::invalid_argument(std::string(name) + ": operator must be d x d");
}

}  // namespace

Eigen::MatrixXcd transfer_matrix(const Eigen::MatrixXcd& u, long d, long D) {
  if (u.rows() != d * D || u.cols() != d * D)
    throw std::invalid_argument("transfer_matrix: unit must act on C^d (x) C^D");
  return folded_block(u, d, D, nullptr, nullptr) / static_cast<double>(d);
}

Eigen::MatrixXcd block_transfer(const DisorderedMps& mps) {
  mps.validate();
  long D = mps.D;
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Identity(D * D, D * D);
  // Chain convention: later units act on the left, so F = E_v ... E_1.
  for (const auto& u : mps.units) f = transfer_matrix(u, mps.d, D) * f;
  return f;
}

Eigen::VectorXcd fixed_point_vector(long D) { return cap_vector(D) / std::sqrt(static_cast<double>(D)); }

std::complex<double> correlation_d2(const DisorderedMps& mps, const Eigen::MatrixXcd& a,
                                    const Eigen::MatrixXcd& b, long s) {
  mps.validate();
  if (s < 1) throw std::invalid_argument("correlation_d2: s must be >= 1");
  if (s > static_cast<long>(mps.units.size()))
    throw std::invalid_argument("correlation_d2: s exceeds the number of units v");
  check_op(a, mps.d, "correlation_d2 A");
  check_op(b, mps.d, "correlation_d2 B");
  long d = mps.d, D = mps.D;
  auto unit = [&](long j) -> const Eigen::MatrixXcd& {
    return mps.units[static_cast<std::size_t>(j % static_cast<long>(mps.units.size()))];
  };

  Eigen::VectorXcd vec = cap_vector(D);
  vec = folded_block(unit(0), d, D, &a, nullptr) * vec;
  for (long j = 1; j <= s; ++j) vec = folded_block(unit(j), d, D, nullptr, nullptr) * vec;
  vec = folded_block(unit(s + 1), d, D, nullptr, &b) * vec;
  std::complex<double> value = cap_vector(D).dot(vec);  // dot conjugates; cap is real

  double norm = std::pow(static_cast<double>(d), static_cast<double>(s + 2)) * static_cast<double>(D);
  return value / norm;
}

std::complex<double> correlation_d1(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& a,
                                    const Eigen::MatrixXcd& b, long d, long D) {
  if (u.rows() != d * D || u.cols() != d * D)
    throw std::invalid_argument("correlation_d1: unit must act on C^d (x) C^D");
  check_op(a, d, "correlation_d1 A");
  check_op(b, d, "correlation_d1 B");
  Eigen::MatrixXcd block = folded_block(u, d, D, &a, &b);
  std::complex<double> value = cap_vector(D).dot(block * cap_vector(D));
  return value / static_cast<double>(d * D);
}

std::complex<double> finite_n_correlation(const DisorderedMps& mps, const Eigen::MatrixXcd& a,
                                          const Eigen::MatrixXcd& b, long s, long w) {
  mps.validate();
  if (w < 1) throw std::invalid_argument("finite_n_correlation: w must be >= 1");
  if (s < 1) throw std::invalid_argument("finite_n_correlation: s must be >= 1");
  long v = static_cast<long>(mps.units.size());
  if (v < s + 2)
    throw std::invalid_argument("finite_n_correlation: decorated window needs v >= s + 2");
  check_op(a, mps.d, "finite_n_correlation A");
  check_op(b, mps.d, "finite_n_correlation B");
  long d = mps.d, D = mps.D;

  Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(D * D, D * D);
  for (long j = 0; j < v; ++j) {
    const Eigen::MatrixXcd& u = mps.units[static_cast<std::size_t>(j)];
    Eigen::MatrixXcd blk;
    if (j == 0)
      blk = folded_block(u, d, D, &a, nullptr);
    else if (j == s + 1)
      blk = folded_block(u, d, D, nullptr, &b);
    else
      blk = folded_block(u, d, D, nullptr, nullptr);
    g = blk * g;
  }
  g /= std::pow(static_cast<double>(d), static_cast<double>(v));

  // Normalized finite-size value tr(G F^{w-1}) / tr(F^w); the denominator is
  // the finite-chain norm and tends to 1, so the ratio converges to the
  // fixed-point value at rate |lambda_2(F)| while keeping A = B = I at
  // exactly 1 for every w.
  Eigen::MatrixXcd f = block_transfer(mps);
  Eigen::MatrixXcd fp = Eigen::MatrixXcd::Identity(D * D, D * D);
  for (long i = 0; i < w - 1; ++i) fp = f * fp;
  std::complex<double> num = (g * fp).trace();
  std::complex<double> den = (f * fp).trace();
  return num / den;
}

}  // namespace haarcorr
