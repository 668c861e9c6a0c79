#include "haarcorr/tensor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace haarcorr {

namespace {

long total_size(const std::vector<Leg>& legs) {
  long n = 1;
  for (const auto& l : legs) {
    if (l.dim < 1) throw std::invalid_argument("tensor leg dimension must be >= 1");
    n *= l.dim;
  }
  return n;
}

void check_unique(const std::vector<Leg>& legs) {
  std::set<std::string> names;
  for (const auto& l : legs)
    if (!names.insert(l.name).second)
      throw std::invalid_argument("duplicate leg name '" + l.name + "' within a tensor");
}

std::vector<long> strides_of(const std::vector<Leg>& legs) {
  std::vector<long> s(legs.size());
  long acc = 1;
  for (std::size_t i = legs.size(); i-- > 0;) {
    s[i] = acc;
    acc *= legs[i].dim;
  }
  return s;
}

}  // namespace

ComplexTensor::ComplexTensor(std::vector<Leg> legs) : legs_(std::move(legs)) {
  check_unique(legs_);
  data_.assign(total_size(legs_), {0.0, 0.0});
}

ComplexTensor::ComplexTensor(std::vector<Leg> legs, std::vector<std::complex<double>> data)
    : legs_(std::move(legs)), data_(std::move(data)) {
  check_unique(legs_);
  if (static_cast<long>(data_.size()) != total_size(legs_))
    throw std::invalid_argument("tensor data length does not match product of leg dimensions");
}

ComplexTensor ComplexTensor::scalar(std::complex<double> v) {
  ComplexTensor t;
  t.data_[0] = v;
  return t;
}

ComplexTensor ComplexTensor::from_matrix(const Eigen::MatrixXcd& m, const std::string& row_leg,
                                         const std::string& col_leg) {
  ComplexTensor t({{row_leg, m.rows()}, {col_leg, m.cols()}});
  for (long r = 0; r < m.rows(); ++r)
    for (long c = 0; c < m.cols(); ++c) t.data_[static_cast<std::size_t>(r * m.cols() + c)] = m(r, c);
  return t;
}

ComplexTensor ComplexTensor::from_vector(const Eigen::VectorXcd& v, const std::string& leg) {
  ComplexTensor t({{leg, v.size()}});
  for (long i = 0; i < v.size(); ++i) t.data_[static_cast<std::size_t>(i)] = v(i);
  return t;
}

ComplexTensor ComplexTensor::delta(const std::string& a, const std::string& b, long dim) {
  ComplexTensor t({{a, dim}, {b, dim}});
  for (long i = 0; i < dim; ++i) t.data_[static_cast<std::size_t>(i * dim + i)] = 1.0;
  return t;
}

long ComplexTensor::dim(const std::string& leg) const { return legs_[leg_index(leg)].dim; }

int ComplexTensor::leg_index(const std::string& leg) const {
  for (std::size_t i = 0; i < legs_.size(); ++i)
    if (legs_[i].name == leg) return static_cast<int>(i);
  throw std::invalid_argument("tensor has no leg named '" + leg + "'");
}

bool ComplexTensor::has_leg(const std::string& leg) const {
  for (const auto& l : legs_)
    if (l.name == leg) return true;
  return false;
}

std::complex<double>& ComplexTensor::at(const std::vector<long>& idx) {
  if (idx.size() != legs_.size()) throw std::invalid_argument("tensor index rank mismatch");
  auto s = strides_of(legs_);
  long off = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) off += idx[i] * s[i];
  return data_[static_cast<std::size_t>(off)];
}

std::complex<double> ComplexTensor::at(const std::vector<long>& idx) const {
  return const_cast<ComplexTensor*>(this)->at(idx);
}

ComplexTensor& ComplexTensor::rename_leg(const std::string& from, const std::string& to) {
  legs_[static_cast<std::size_t>(leg_index(from))].name = to;
  check_unique(legs_);
  return *this;
}

ComplexTensor ComplexTensor::transposed(const std::vector<std::string>& order) const {
  if (order.size() != legs_.size()) throw std::invalid_argument("transpose order rank mismatch");
  std::vector<int> perm(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) perm[i] = leg_index(order[i]);
  std::vector<Leg> new_legs(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_legs[i] = legs_[static_cast<std::size_t>(perm[i])];

  ComplexTensor out(new_legs);
  auto old_strides = strides_of(legs_);
  auto new_strides = strides_of(new_legs);
  long n = size();
  std::vector<long> idx(legs_.size(), 0);
  for (long lin = 0; lin < n; ++lin) {
    long off = 0;
    for (std::size_t i = 0; i < new_legs.size(); ++i) off += idx[i] * old_strides[static_cast<std::size_t>(perm[i])];
    out.data_[static_cast<std::size_t>(lin)] = data_[static_cast<std::size_t>(off)];
    for (std::size_t i = new_legs.size(); i-- > 0;) {
      if (++idx[i] < new_legs[i].dim) break;
      idx[i] = 0;
    }
  }
  return out;
}

Eigen::MatrixXcd ComplexTensor::to_matrix(const std::vector<std::string>& rows,
                                          const std::vector<std::string>& cols) const {
  std::vector<std::string> order = rows;
  order.insert(order.end(), cols.begin(), cols.end());
  if (order.size() != legs_.size())
    throw std::invalid_argument("to_matrix must list every leg exactly once");
  ComplexTensor t = transposed(order);
  long r = 1, c = 1;
  for (const auto& name : rows) r *= dim(name);
  for (const auto& name : cols) c *= dim(name);
  Eigen::MatrixXcd m(r, c);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < c; ++j) m(i, j) = t.data_[static_cast<std::size_t>(i * c + j)];
  return m;
}

std::complex<double> ComplexTensor::to_scalar() const {
  if (!legs_.empty()) throw std::invalid_argument("to_scalar on a tensor with open legs");
  return data_[0];
}

ComplexTensor& ComplexTensor::operator*=(std::complex<double> c) {
  for (auto& v : data_) v *= c;
  return *this;
}

double ComplexTensor::frobenius_norm() const {
  double acc = 0;
  for (const auto& v : data_) acc += std::norm(v);
  return std::sqrt(acc);
}

ComplexTensor contract_pair(const ComplexTensor& a, const ComplexTensor& b,
                            const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::set<std::string> a_contracted, b_contracted;
  for (const auto& [la, lb] : pairs) {
    if (a.dim(la) != b.dim(lb))
      throw std::invalid_argument("contract_pair: dimension mismatch on legs '" + la + "' ~ '" + lb +
                                  "'");
    if (!a_contracted.insert(la).second || !b_contracted.insert(lb).second)
      throw std::invalid_argument("contract_pair: leg used twice in pairing");
  }

  std::vector<std::string> a_free, b_free, a_shared, b_shared;
  for (const auto& l : a.legs())
    (a_contracted.count(l.name) ? a_shared : a_free).push_back(l.name);
  // Keep shared legs in pairing order on both sides.
  a_shared.clear();
  for (const auto& [la, lb] : pairs) {
    a_shared.push_back(la);
    b_shared.push_back(lb);
  }
  for (const auto& l : b.legs())
    if (!b_contracted.count(l.name)) b_free.push_back(l.name);

  std::vector<std::string> a_order = a_free;
  a_order.insert(a_order.end(), a_shared.begin(), a_shared.end());
  std::vector<std::string> b_order = b_shared;
  b_order.insert(b_order.end(), b_free.begin(), b_free.end());

  ComplexTensor at = a.transposed(a_order);
  ComplexTensor bt = b.transposed(b_order);

  long m = 1, kk = 1, n = 1;
  for (const auto& s : a_free) m *= a.dim(s);
  for (const auto& s : a_shared) kk *= a.dim(s);
  for (const auto& s : b_free) n *= b.dim(s);

  using Mat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const Mat> ma(at.data().data(), m, kk);
  Eigen::Map<const Mat> mb(bt.data().data(), kk, n);
  Mat mc = ma * mb;

  std::vector<Leg> out_legs;
  for (const auto& s : a_free) out_legs.push_back({s, a.dim(s)});
  for (const auto& s : b_free) out_legs.push_back({s, b.dim(s)});
  std::vector<std::complex<double>> out_data(mc.data(), mc.data() + m * n);
  return ComplexTensor(std::move(out_legs), std::move(out_data));
}

ComplexTensor self_trace(const ComplexTensor& a,
                         const std::vector<std::pair<std::string, std::string>>& pairs) {
  if (pairs.empty()) return a;
  std::vector<std::string> traced_first, traced_second, free_legs;
  std::set<std::string> traced;
  for (const auto& [l1, l2] : pairs) {
    if (a.dim(l1) != a.dim(l2)) throw std::invalid_argument("self_trace: dimension mismatch");
    if (!traced.insert(l1).second || !traced.insert(l2).second)
      throw std::invalid_argument("self_trace: leg used twice");
    traced_first.push_back(l1);
    traced_second.push_back(l2);
  }
  for (const auto& l : a.legs())
    if (!traced.count(l.name)) free_legs.push_back(l.name);

  std::vector<std::string> order = free_legs;
  order.insert(order.end(), traced_first.begin(), traced_first.end());
  order.insert(order.end(), traced_second.begin(), traced_second.end());
  ComplexTensor t = a.transposed(order);

  long f = 1, tdim = 1;
  for (const auto& s : free_legs) f *= a.dim(s);
  for (const auto& s : traced_first) tdim *= a.dim(s);

  std::vector<Leg> out_legs;
  for (const auto& s : free_legs) out_legs.push_back({s, a.dim(s)});
  ComplexTensor out(out_legs);
  const auto& src = t.data();
  for (long i = 0; i < f; ++i) {
    std::complex<double> acc = 0;
    for (long j = 0; j < tdim; ++j) acc += src[static_cast<std::size_t>((i * tdim + j) * tdim + j)];
    out.data()[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

namespace {

struct LiveTensor {
  ComplexTensor tensor;
  // Maps the tensor's (unique, internal) leg names back to network refs.
  bool alive = false;
};

std::string internal_name(const LegRef& ref) {
  return "#" + std::to_string(ref.tensor) + "/" + ref.leg;
}

}  // namespace

ComplexTensor contract(std::vector<ComplexTensor> network,
                       const std::vector<std::pair<LegRef, LegRef>>& pairings,
                       const std::vector<LegRef>& open_order) {
  if (network.empty()) throw std::invalid_argument("contract: empty network");
  int n = static_cast<int>(network.size());

  // Give every leg a unique internal name so tensors may reuse leg names.
  std::vector<LiveTensor> live(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& t = network[static_cast<std::size_t>(i)];
    std::vector<Leg> renamed;
    for (const auto& l : t.legs()) renamed.push_back({internal_name({i, l.name}), l.dim});
    live[static_cast<std::size_t>(i)].tensor = ComplexTensor(std::move(renamed), std::move(t.data()));
    live[static_cast<std::size_t>(i)].alive = true;
  }

  // Validate pairings and split into self-traces and cross bonds.
  std::set<std::string> used;
  std::vector<std::vector<std::pair<std::string, std::string>>> self_pairs(
      static_cast<std::size_t>(n));
  struct Bond {
    int a, b;
    std::string la, lb;
  };
  std::vector<Bond> bonds;
  for (const auto& [r1, r2] : pairings) {
    if (r1.tensor < 0 || r1.tensor >= n || r2.tensor < 0 || r2.tensor >= n)
      throw std::invalid_argument("contract: pairing references tensor out of range");
    std::string n1 = internal_name(r1), n2 = internal_name(r2);
    if (!used.insert(n1).second || !used.insert(n2).second)
      throw std::invalid_argument("contract: leg paired twice");
    long d1 = live[static_cast<std::size_t>(r1.tensor)].tensor.dim(n1);
    long d2 = live[static_cast<std::size_t>(r2.tensor)].tensor.dim(n2);
    if (d1 != d2) throw std::invalid_argument("contract: paired legs have unequal dimensions");
    if (r1.tensor == r2.tensor)
      self_pairs[static_cast<std::size_t>(r1.tensor)].push_back({n1, n2});
    else
      bonds.push_back({r1.tensor, r2.tensor, n1, n2});
  }
  for (const auto& ref : open_order)
    if (used.count(internal_name(ref)))
      throw std::invalid_argument("contract: open leg '" + ref.leg + "' is also paired");

  for (int i = 0; i < n; ++i)
    if (!self_pairs[static_cast<std::size_t>(i)].empty())
      live[static_cast<std::size_t>(i)].tensor =
          self_trace(live[static_cast<std::size_t>(i)].tensor, self_pairs[static_cast<std::size_t>(i)]);

  // Union-find style merging, greedy by smallest contraction result.
  std::vector<int> owner(static_cast<std::size_t>(n));
  std::iota(owner.begin(), owner.end(), 0);
  auto find = [&](int x) {
    while (owner[static_cast<std::size_t>(x)] != x) x = owner[static_cast<std::size_t>(x)];
    return x;
  };

  while (true) {
    // Group remaining bonds by live tensor pair.
    std::map<std::pair<int, int>, std::vector<std::pair<std::string, std::string>>> by_pair;
    for (const auto& b : bonds) {
      int ra = find(b.a), rb = find(b.b);
      if (ra == rb) continue;  // became a self-trace after earlier merges
      auto key = std::minmax(ra, rb);
      if (find(b.a) == key.first)
        by_pair[{key.first, key.second}].push_back({b.la, b.lb});
      else
        by_pair[{key.first, key.second}].push_back({b.lb, b.la});
    }
    if (by_pair.empty()) break;

    // Pick the pair whose contraction result is smallest.
    double best_size = -1;
    std::pair<int, int> best;
    for (const auto& [key, pl] : by_pair) {
      const auto& ta = live[static_cast<std::size_t>(key.first)].tensor;
      const auto& tb = live[static_cast<std::size_t>(key.second)].tensor;
      double result = static_cast<double>(ta.size()) * static_cast<double>(tb.size());
      for (const auto& [la, lb] : pl) {
        double d = static_cast<double>(ta.dim(la));
        result /= d * d;
      }
      if (best_size < 0 || result < best_size) {
        best_size = result;
        best = key;
      }
    }

    auto& dst = live[static_cast<std::size_t>(best.first)];
    auto& src = live[static_cast<std::size_t>(best.second)];
    dst.tensor = contract_pair(dst.tensor, src.tensor, by_pair[best]);
    src.tensor = ComplexTensor();
    src.alive = false;
    owner[static_cast<std::size_t>(best.second)] = best.first;

    // Merges can turn remaining bonds between the same components into
    // self-traces; resolve them immediately.
    std::vector<std::pair<std::string, std::string>> self_now;
    std::vector<Bond> rest;
    for (const auto& b : bonds) {
      int ra = find(b.a), rb = find(b.b);
      if (ra == rb && ra == best.first && dst.tensor.has_leg(b.la) && dst.tensor.has_leg(b.lb))
        self_now.push_back({b.la, b.lb});
      else if (ra != rb)
        rest.push_back(b);
    }
    bonds = std::move(rest);
    if (!self_now.empty()) dst.tensor = self_trace(dst.tensor, self_now);
  }

  // Outer-product any disconnected components.
  ComplexTensor result;
  bool first = true;
  for (auto& lt : live) {
    if (!lt.alive) continue;
    if (first) {
      result = std::move(lt.tensor);
      first = false;
    } else {
      result = contract_pair(result, lt.tensor, {});
    }
  }

  std::vector<std::string> want;
  for (const auto& ref : open_order) want.push_back(internal_name(ref));
  if (static_cast<int>(want.size()) != result.rank())
    throw std::invalid_argument("contract: declared open legs do not match dangling legs");
  result = result.transposed(want);
  // Restore the user-facing leg names.
  std::vector<Leg> final_legs;
  for (std::size_t i = 0; i < open_order.size(); ++i)
    final_legs.push_back({open_order[i].leg, result.legs()[i].dim});
  return ComplexTensor(std::move(final_legs), std::move(result.data()));
}

}  // namespace haarcorr
