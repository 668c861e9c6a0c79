#include "haarcorr/operators.hpp"

#include <stdexcept>

namespace haarcorr {

namespace {

Eigen::MatrixXcd exact_to_matrix(const std::vector<std::vector<CRat>>& e) {
  long d = static_cast<long>(e.size());
  Eigen::MatrixXcd m(d, d);
  for (long i = 0; i < d; ++i) {
    if (static_cast<long>(e[static_cast<std::size_t>(i)].size()) != d)
      throw std::invalid_argument("operator exact entries must form a square matrix");
    for (long j = 0; j < d; ++j) m(i, j) = e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].to_complex();
  }
  return m;
}

}  // namespace

Operator Operator::from_exact(std::vector<std::vector<CRat>> entries) {
  Operator op;
  op.m = exact_to_matrix(entries);
  op.exact = std::move(entries);
  return op;
}

Operator Operator::from_matrix(Eigen::MatrixXcd m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("operator matrix must be square");
  Operator op;
  op.m = std::move(m);
  return op;
}

Operator Operator::identity(long d) {
  std::vector<std::vector<CRat>> e(static_cast<std::size_t>(d),
                                   std::vector<CRat>(static_cast<std::size_t>(d)));
  for (long i = 0; i < d; ++i) e[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = CRat{Rat(1)};
  return from_exact(std::move(e));
}

Operator Operator::pauli(char axis) {
  std::vector<std::vector<CRat>> e(2, std::vector<CRat>(2));
  switch (axis) {
    case 'x':
      e[0][1] = CRat{Rat(1)};
      e[1][0] = CRat{Rat(1)};
      break;
    case 'y':
      e[0][1] = CRat{Rat(0), Rat(-1)};
      e[1][0] = CRat{Rat(0), Rat(1)};
      break;
    case 'z':
      e[0][0] = CRat{Rat(1)};
      e[1][1] = CRat{Rat(-1)};
      break;
    default:
      throw std::invalid_argument(std::string("unknown Pauli axis '") + axis + "'");
  }
  return from_exact(std::move(e));
}

Operator Operator::gellmann(long d, int i, int j) {
  if (i < 1 || j < 1 || i > d || j > d)
    throw std::invalid_argument("gellmann indices must lie in [1, d]");
  std::vector<std::vector<CRat>> e(static_cast<std::size_t>(d),
                                   std::vector<CRat>(static_cast<std::size_t>(d)));
  auto at = [&](int r, int c) -> CRat& {
    return e[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c - 1)];
  };
  if (i < j) {
    at(i, j) = CRat{Rat(1)};
    at(j, i) = CRat{Rat(1)};
  } else if (i > j) {
    at(j, i) = CRat{Rat(0), Rat(-1)};
    at(i, j) = CRat{Rat(0), Rat(1)};
  } else {
    if (i == 1) throw std::invalid_argument("gellmann-1-1 is not traceless; use identity");
    for (int m = 1; m < i; ++m) at(m, m) = CRat{Rat(1)};
    at(i, i) = CRat{Rat(-(i - 1))};
  }
  return from_exact(std::move(e));
}

Operator Operator::preset(const std::string& name, long d) {
  if (name == "identity") return identity(d);
  if (name == "pauli-x" || name == "pauli-y" || name == "pauli-z") {
    if (d != 2) throw std::invalid_argument("Pauli presets require d = 2");
    return pauli(name.back());
  }
  if (name.rfind("gellmann-", 0) == 0) {
    auto rest = name.substr(9);
    auto dash = rest.find('-');
    if (dash == std::string::npos) throw std::invalid_argument("expected gellmann-i-j");
    int i = std::stoi(rest.substr(0, dash));
    int j = std::stoi(rest.substr(dash + 1));
    return gellmann(d, i, j);
  }
  throw std::invalid_argument("unknown operator preset '" + name + "'");
}

std::vector<std::complex<double>> power_traces(const Eigen::MatrixXcd& a, int kmax) {
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(kmax));
  Eigen::MatrixXcd p = a;
  for (int k = 1; k <= kmax; ++k) {
    out.push_back(p.trace());
    if (k < kmax) p = p * a;
  }
  return out;
}

std::vector<CRat> exact_power_traces(const std::vector<std::vector<CRat>>& a, int kmax) {
  std::size_t d = a.size();
  auto mul = [&](const std::vector<std::vector<CRat>>& x) {
    std::vector<std::vector<CRat>> y(d, std::vector<CRat>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t l = 0; l < d; ++l) {
        if (x[i][l].is_zero()) continue;
        for (std::size_t j = 0; j < d; ++j) y[i][j] += x[i][l] * a[l][j];
      }
    return y;
  };
  std::vector<CRat> out;
  out.reserve(static_cast<std::size_t>(kmax));
  auto p = a;
  for (int k = 1; k <= kmax; ++k) {
    CRat tr;
    for (std::size_t i = 0; i < d; ++i) tr += p[i][i];
    out.push_back(tr);
    if (k < kmax) p = mul(p);
  }
  return out;
}

std::complex<double> cycle_trace(const std::vector<std::complex<double>>& ptraces,
                                 const Permutation& pi) {
  std::complex<double> acc = 1.0;
  for (int len : cycle_type(pi)) acc *= ptraces[static_cast<std::size_t>(len - 1)];
  return acc;
}

CRat cycle_trace_exact(const std::vector<CRat>& ptraces, const Permutation& pi) {
  CRat acc{Rat(1)};
  for (int len : cycle_type(pi)) acc *= ptraces[static_cast<std::size_t>(len - 1)];
  return acc;
}

}  // namespace haarcorr
