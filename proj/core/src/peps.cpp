#include "haarcorr/peps.hpp"

#include <cmath>
#include <stdexcept>

#include "haarcorr/tensor.hpp"

namespace haarcorr {

namespace {

long isqrt_exact(long D) {
  long e = static_cast<long>(std::llround(std::sqrt(static_cast<double>(D))));
  if (e * e != D) return -1;
  return e;
}

// Utilde as a 5-leg tensor [dm, eu, ed, din, hi] and Uhat as
// [do, ho, dm, pu, pd], optionally conjugated for the bra layer. Leg names
// get a caller-chosen suffix.
ComplexTensor utilde_tensor(const PepsUnit& u, bool conj, const std::string& sfx) {
  long d = u.d, D = u.D, e = u.e;
  ComplexTensor t({{"dm" + sfx, d}, {"eu" + sfx, e}, {"ed" + sfx, e}, {"din" + sfx, d}, {"hi" + sfx, D}});
  auto& data = t.data();
  for (long dm = 0; dm < d; ++dm)
    for (long eu = 0; eu < e; ++eu)
      for (long ed = 0; ed < e; ++ed)
        for (long din = 0; din < d; ++din)
          for (long hi = 0; hi < D; ++hi) {
            std::complex<double> v = u.utilde(dm * D + eu * e + ed, din * D + hi);
            data[static_cast<std::size_t>((((dm * e + eu) * e + ed) * d + din) * D + hi)] =
                conj ? std::conj(v) : v;
          }
  return t;
}

ComplexTensor uhat_tensor(const PepsUnit& u, bool conj, const std::string& sfx) {
  long d = u.d, D = u.D, e = u.e;
  ComplexTensor t({{"do" + sfx, d}, {"ho" + sfx, D}, {"dm" + sfx, d}, {"pu" + sfx, e}, {"pd" + sfx, e}});
  auto& data = t.data();
  for (long dout = 0; dout < d; ++dout)
    for (long ho = 0; ho < D; ++ho)
      for (long dm = 0; dm < d; ++dm)
        for (long pu = 0; pu < e; ++pu)
          for (long pd = 0; pd < e; ++pd) {
            std::complex<double> v = u.uhat(dout * D + ho, dm * D + pu * e + pd);
            data[static_cast<std::size_t>((((dout * D + ho) * d + dm) * e + pu) * e + pd)] =
                conj ? std::conj(v) : v;
          }
  return t;
}

void check_op(const Eigen::MatrixXcd& a, long d, const char* name) {
  if (a.rows() != d || a.cols() != d)
    throw std::invalid_argument(std::string(name) + ": operator must be d x d");
}

void check_grid_units(const PepsGrid& units) {
  if (units.empty() || units[0].empty()) throw std::invalid_argument("peps grid is empty");
  long d = units[0][0].d, D = units[0][0].D;
  for (const auto& row : units) {
    if (row.size() != units[0].size()) throw std::invalid_argument("peps grid rows have unequal length");
    for (const auto& u : row)
      if (u.d != d || u.D != D) throw std::invalid_argument("peps grid units must share (d, D)");
  }
}

// Tie two open legs of acc together (a folded trace cap), optionally
// weighted by an operator between the ket and bra wires.
void close_legs(ComplexTensor& acc, const std::string& ket, const std::string& bra, long dim) {
  acc = contract_pair(acc, ComplexTensor::delta("x", "y", dim), {{ket, "x"}, {bra, "y"}});
}

void close_legs_op(ComplexTensor& acc, const std::string& ket, const std::string& bra,
                   const Eigen::MatrixXcd& op) {
  acc = contract_pair(acc, ComplexTensor::from_matrix(op, "x", "y"), {{ket, "x"}, {bra, "y"}});
}

struct Insertion {
  const Eigen::MatrixXcd* in = nullptr;
  const Eigen::MatrixXcd* out = nullptr;
};

// Folded contraction of a rows x cols grid, raster order, bottom row first.
// Physical and boundary legs are closed with traces unless an insertion is
// given; vertical bonds are Utilde-out to Uhat-in across rows, horizontal
// bonds Uhat-out to Utilde-in across columns. Returns the unnormalized
// diagram value.
std::complex<double> contract_folded_grid(const PepsGrid& units,
                                          const std::vector<std::vector<Insertion>>& ops) {
  long rows = static_cast<long>(units.size());
  long cols = static_cast<long>(units[0].size());
  long d = units[0][0].d, D = units[0][0].D, e = units[0][0].e;

  ComplexTensor acc = ComplexTensor::scalar(1.0);
  for (long r = 0; r < rows; ++r) {
    for (long c = 0; c < cols; ++c) {
      const PepsUnit& u = units[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      std::string col_s = ":" + std::to_string(c);
      const Insertion& ins = ops[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];

      // Utilde layer (ket and bra). Its ed leg eats the lower row's open pu
      // wire; its hi leg eats the previous column's ho wire.
      for (const char* sfx : {"_k", "_b"}) {
        bool bra = sfx[1] == 'b';
        ComplexTensor ut = utilde_tensor(u, bra, sfx);
        std::vector<std::pair<std::string, std::string>> pairs;
        if (r > 0) pairs.push_back({"pu" + std::string(sfx) + col_s, "ed" + std::string(sfx)});
        if (c > 0) pairs.push_back({"ho" + std::string(sfx), "hi" + std::string(sfx)});
        acc = contract_pair(acc, ut, pairs);
      }
      if (r == 0) close_legs(acc, "ed_k", "ed_b", e);  // bottom boundary
      if (c == 0) close_legs(acc, "hi_k", "hi_b", D);  // left boundary
      if (ins.in)
        close_legs_op(acc, "din_k", "din_b", *ins.in);
      else
        close_legs(acc, "din_k", "din_b", d);

      // Uhat layer. Its pd leg eats the lower row's open eu wire.
      for (const char* sfx : {"_k", "_b"}) {
        bool bra = sfx[1] == 'b';
        ComplexTensor uh = uhat_tensor(u, bra, sfx);
        std::vector<std::pair<std::string, std::string>> pairs{
            {"dm" + std::string(sfx), "dm" + std::string(sfx)}};
        if (r > 0) pairs.push_back({"eu" + std::string(sfx) + col_s, "pd" + std::string(sfx)});
        acc = contract_pair(acc, uh, pairs);
      }
      if (r == 0) close_legs(acc, "pd_k", "pd_b", e);
      if (ins.out)
        close_legs_op(acc, "do_k", "do_b", *ins.out);
      else
        close_legs(acc, "do_k", "do_b", d);
      if (c == cols - 1) close_legs(acc, "ho_k", "ho_b", D);  // right boundary

      if (r == rows - 1) {
        // Top boundary: cap this unit's upward wires.
        close_legs(acc, "eu_k", "eu_b", e);
        close_legs(acc, "pu_k", "pu_b", e);
      } else {
        // Tag the upward wires with their column for the next row.
        for (const char* base : {"eu", "pu"})
          for (const char* sfx : {"_k", "_b"}) {
            std::string name = std::string(base) + sfx;
            acc.rename_leg(name, name + col_s);
          }
      }
    }
  }
  return acc.to_scalar();
}

}  // namespace

void PepsEnsembleSpec::validate() const {
  if (d < 2 || D < 1) throw std::invalid_argument("PepsEnsembleSpec: need d >= 2 and D >= 1");
  if (isqrt_exact(D) < 0)
    throw std::invalid_argument("PepsEnsembleSpec: D must be a perfect square");
  if (v < 1 || m < 1) throw std::invalid_argument("PepsEnsembleSpec: need v >= 1 and m >= 1");
  if (classify_peps(geometry.x1, geometry.x2, geometry.r1, geometry.r2, geometry.t) ==
      CorrelationCase::kGenericD2) {
    long s = chain_length_s(geometry.r1, geometry.t);
    if (v < s)
      throw std::invalid_argument("PepsEnsembleSpec: shift-invariance block v must be >= s = " +
                                  std::to_string(s));
  }
}

PepsUnit build_unit(const Eigen::MatrixXcd& utilde, const Eigen::MatrixXcd& uhat, long d, long D) {
  if (d < 1 || D < 1) throw std::invalid_argument("build_unit: need d >= 1 and D >= 1");
  long e = isqrt_exact(D);
  if (e < 0) throw std::invalid_argument("build_unit: D must be a perfect square");
  if (utilde.rows() != d * D || utilde.cols() != d * D || uhat.rows() != d * D ||
      uhat.cols() != d * D)
    throw std::invalid_argument("build_unit: unitaries must act on C^d (x) C^D");
  if (unitarity_residual(utilde) > 1e-12 || unitarity_residual(uhat) > 1e-12)
    throw std::invalid_argument("build_unit: input matrices are not unitary to 1e-12");
  PepsUnit u;
  u.d = d;
  u.D = D;
  u.e = e;
  u.utilde = utilde;
  u.uhat = uhat;
  u.unitarity_residual = unitarity_residual(unit_operator(u));
  auto [s1, s2] = check_simplicity(u);
  u.simplicity1_residual = s1;
  u.simplicity2_residual = s2;
  return u;
}

Eigen::MatrixXcd unit_operator(const PepsUnit& u) {
  long d = u.d, D = u.D, e = u.e;
  long dim = d * D * e * e;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  // Row (do, ho, eu, ed), column (din, hi, pu, pd), physical-major.
  for (long dout = 0; dout < d; ++dout)
    for (long ho = 0; ho < D; ++ho)
      for (long eu = 0; eu < e; ++eu)
        for (long ed = 0; ed < e; ++ed)
          for (long din = 0; din < d; ++din)
            for (long hi = 0; hi < D; ++hi)
              for (long pu = 0; pu < e; ++pu)
                for (long pd = 0; pd < e; ++pd) {
                  std::complex<double> acc = 0;
                  for (long dm = 0; dm < d; ++dm)
                    acc += u.uhat(dout * D + ho, dm * D + pu * e + pd) *
                           u.utilde(dm * D + eu * e + ed, din * D + hi);
                  out(((dout * D + ho) * e + eu) * e + ed, ((din * D + hi) * e + pu) * e + pd) = acc;
                }
  return out;
}

std::pair<double, double> check_simplicity(const PepsUnit& u) {
  long d = u.d, D = u.D, e = u.e;
  // Intra-unit collapse: regroup the composite as M[(do,ho,din,hi), vertical]
  // and test M^dag M = d * I on the vertical index pairs.
  Eigen::MatrixXcd c = unit_operator(u);
  long vdim = e * e * e * e;
  Eigen::MatrixXcd m(d * D * d * D, vdim);
  for (long dout = 0; dout < d; ++dout)
    for (long ho = 0; ho < D; ++ho)
      for (long eu = 0; eu < e; ++eu)
        for (long ed = 0; ed < e; ++ed)
          for (long din = 0; din < d; ++din)
            for (long hi = 0; hi < D; ++hi)
              for (long pu = 0; pu < e; ++pu)
                for (long pd = 0; pd < e; ++pd)
                  m((dout * D + ho) * d * D + din * D + hi,
                    ((eu * e + ed) * e + pu) * e + pd) =
                      c(((dout * D + ho) * e + eu) * e + ed, ((din * D + hi) * e + pu) * e + pd);
  Eigen::MatrixXcd g = m.adjoint() * m;
  Eigen::MatrixXcd target = static_cast<double>(d) * Eigen::MatrixXcd::Identity(vdim, vdim);
  double s1 = (g - target).cwiseAbs().maxCoeff();

  // Inter-unit cut: the fully capped two-stack must evaluate to d^2 D^3.
  PepsGrid stack{{u}, {u}};
  std::vector<std::vector<Insertion>> ops(2, std::vector<Insertion>(1));
  std::complex<double> value = contract_folded_grid(stack, ops);
  double expected = static_cast<double>(d * d) * static_cast<double>(D * D * D);
  double s2 = std::abs(value - expected) / expected;
  return {s1, s2};
}

Eigen::MatrixXcd w_column(const std::vector<PepsUnit>& column) {
  long m = static_cast<long>(column.size());
  if (m < 1) throw std::invalid_argument("w_column: empty column");
  long d = column[0].d, D = column[0].D;

  ComplexTensor acc = ComplexTensor::scalar(1.0);
  for (long r = 0; r < m; ++r) {
    const PepsUnit& u = column[static_cast<std::size_t>(r)];
    if (u.d != d || u.D != D) throw std::invalid_argument("w_column: units must share (d, D)");
    std::string sr = "@" + std::to_string(r);
    ComplexTensor ut = utilde_tensor(u, false, sr);
    std::vector<std::pair<std::string, std::string>> tp;
    if (r > 0) tp.push_back({"pu@" + std::to_string(r - 1), "ed" + sr});
    acc = contract_pair(acc, ut, tp);
    ComplexTensor uh = uhat_tensor(u, false, sr);
    std::vector<std::pair<std::string, std::string>> hp{{"dm" + sr, "dm" + sr}};
    if (r > 0) hp.push_back({"eu@" + std::to_string(r - 1), "pd" + sr});
    acc = contract_pair(acc, uh, hp);
  }
  // Periodic wrap: top eu feeds bottom pd, bottom ed is fed by top pu.
  std::string top = "@" + std::to_string(m - 1);
  acc = self_trace(acc, {{"eu" + top, "pd@0"}, {"ed@0", "pu" + top}});

  std::vector<std::string> row_legs, col_legs;
  for (long r = 0; r < m; ++r) {
    row_legs.push_back("do@" + std::to_string(r));
    row_legs.push_back("ho@" + std::to_string(r));
    col_legs.push_back("din@" + std::to_string(r));
    col_legs.push_back("hi@" + std::to_string(r));
  }
  return acc.to_matrix(row_legs, col_legs);
}

CorrelationCase classify_peps(long x1, long x2, long r1, long r2, long t) {
  if (r2 < 0) throw std::invalid_argument("classify_peps: convention requires r2 >= 0");
  if (r1 < 1 || t < 0) throw std::invalid_argument("classify_peps: need r1 >= 1 and t >= 0");
  if (4 * t + (x2 % 2 + 2) % 2 + 1 - r2 <= 0) return CorrelationCase::kZeroInsideLightcone;
  return classify(x1, r1, t);
}

PepsGrid sample_peps_grid(long d, long D, long rows, long cols, RngStream& rng) {
  PepsGrid grid(static_cast<std::size_t>(rows));
  for (auto& row : grid) {
    row.reserve(static_cast<std::size_t>(cols));
    for (long c = 0; c < cols; ++c)
      row.push_back(build_unit(haar_unitary(d * D, rng).m, haar_unitary(d * D, rng).m, d, D));
  }
  return grid;
}

std::vector<PepsUnit> sample_peps_column(long d, long D, long rows, RngStream& rng) {
  std::vector<PepsUnit> column;
  column.reserve(static_cast<std::size_t>(rows));
  for (long r = 0; r < rows; ++r)
    column.push_back(build_unit(haar_unitary(d * D, rng).m, haar_unitary(d * D, rng).m, d, D));
  return column;
}

std::complex<double> correlation_d2_peps(const PepsGrid& units, const Eigen::MatrixXcd& a,
                                         const Eigen::MatrixXcd& b, long s) {
  check_grid_units(units);
  long rows = static_cast<long>(units.size());
  long cols = static_cast<long>(units[0].size());
  if (rows != kPepsRowsT1)
    throw std::invalid_argument("correlation_d2_peps: the t = 1 template has 6 unit rows");
  if (s < 1 || cols != s + 2)
    throw std::invalid_argument("correlation_d2_peps: need s >= 1 and s + 2 columns");
  long d = units[0][0].d, D = units[0][0].D;
  check_op(a, d, "correlation_d2_peps A");
  check_op(b, d, "correlation_d2_peps B");

  std::vector<std::vector<Insertion>> ops(static_cast<std::size_t>(rows),
                                          std::vector<Insertion>(static_cast<std::size_t>(cols)));
  ops[kPepsOperatorRowT1][0].in = &a;
  ops[kPepsOperatorRowT1][static_cast<std::size_t>(cols - 1)].out = &b;

  std::complex<double> value = contract_folded_grid(units, ops);
  double norm = std::pow(static_cast<double>(d), static_cast<double>(rows * cols)) *
                std::pow(static_cast<double>(D), static_cast<double>(rows + cols));
  return value / norm;
}

std::complex<double> correlation_d1_peps(const std::vector<PepsUnit>& column,
                                         const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (static_cast<long>(column.size()) != kPepsRowsT1)
    throw std::invalid_argument("correlation_d1_peps: the t = 1 template has 6 unit rows");
  PepsGrid grid;
  for (const auto& u : column) grid.push_back({u});
  check_grid_units(grid);
  long d = column[0].d, D = column[0].D;
  check_op(a, d, "correlation_d1_peps A");
  check_op(b, d, "correlation_d1_peps B");

  std::vector<std::vector<Insertion>> ops(static_cast<std::size_t>(kPepsRowsT1),
                                          std::vector<Insertion>(1));
  ops[static_cast<std::size_t>(kPepsRowsT1 - 1)][0].in = &a;
  ops[static_cast<std::size_t>(kPepsRowsT1 - 1)][0].out = &b;

  std::complex<double> value = contract_folded_grid(grid, ops);
  double norm = std::pow(static_cast<double>(d), 6.0) * std::pow(static_cast<double>(D), 7.0);
  return value / norm;
}

}  // namespace haarcorr
