#include "haarcorr/json_io.hpp"

#include <fstream>
#include <sstream>

namespace haarcorr {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (long i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (long j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix JSON must be a nonempty array");
  long rows = static_cast<long>(j.size());
  long cols = static_cast<long>(j.at(0).size());
  Eigen::MatrixXcd m(rows, cols);
  for (long r = 0; r < rows; ++r) {
    const auto& row = j.at(static_cast<std::size_t>(r));
    if (static_cast<long>(row.size()) != cols)
      throw std::invalid_argument("matrix JSON rows have unequal length");
    for (long c = 0; c < cols; ++c) {
      const auto& cell = row.at(static_cast<std::size_t>(c));
      if (!cell.is_array() || cell.size() != 2)
        throw std::invalid_argument("matrix JSON entries must be [re, im] pairs");
      m(r, c) = std::complex<double>(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return m;
}

json weingarten_to_json(const WeingartenTable& table) {
  json entries = json::array();
  for (std::size_t i = 0; i < table.classes().size(); ++i) {
    const Rat& v = table.values()[i];
    entries.push_back({{"cycle_type", table.classes()[i]},
                       {"numerator", v.get_num().get_str()},
                       {"denominator", v.get_den().get_str()}});
  }
  return {{"k", table.k()}, {"q", table.q()}, {"entries", entries}};
}

std::string weingarten_to_csv(const WeingartenTable& table) {
  std::ostringstream out;
  out << "cycle_type,numerator,denominator\n";
  for (std::size_t i = 0; i < table.classes().size(); ++i) {
    const auto& type = table.classes()[i];
    for (std::size_t j = 0; j < type.size(); ++j) {
      if (j) out << '+';
      out << type[j];
    }
    const Rat& v = table.values()[i];
    out << ',' << v.get_num().get_str() << ',' << v.get_den().get_str() << '\n';
  }
  return out.str();
}

json moment_to_json(const MomentResult& r) {
  json j{{"k", r.k},
         {"d", r.d},
         {"D", r.D},
         {"exact", r.exact},
         {"value", {{"re", r.value.real()}, {"im", r.value.imag()}}}};
  if (r.s >= 0) j["s"] = r.s;
  if (r.exact) {
    j["value_exact"] = {{"re",
                         {{"numerator", r.value_exact.re.get_num().get_str()},
                          {"denominator", r.value_exact.re.get_den().get_str()}}},
                        {"im",
                         {{"numerator", r.value_exact.im.get_num().get_str()},
                          {"denominator", r.value_exact.im.get_den().get_str()}}}};
  }
  return j;
}

json estimate_to_json(const McEstimate& e) {
  return {{"mean", {{"re", e.mean.real()}, {"im", e.mean.imag()}}},
          {"stderr", {{"re", e.stderr_re}, {"im", e.stderr_im}}},
          {"n_samples", e.n_samples},
          {"seed", e.seed},
          {"wall_time_s", e.wall_time_s}};
}

json report_to_json(const ComparisonReport& r) {
  return {{"analytic", moment_to_json(r.analytic)},
          {"mc", estimate_to_json(r.mc)},
          {"z_score", r.z_score},
          {"threshold", r.threshold},
          {"pass", r.pass}};
}

json gate_to_json(const DualGate& gate) {
  return {{"d", gate.d},
          {"matrix", matrix_to_json(gate.m)},
          {"residuals",
           {{"temporal", gate.residuals.temporal},
            {"spatial1", gate.residuals.spatial1},
            {"spatial2", gate.residuals.spatial2}}}};
}

DualGate gate_from_json(const json& j) {
  DualGate g;
  g.d = j.at("d").get<int>();
  g.m = matrix_from_json(j.at("matrix"));
  g.residuals = check_dual(g.m, g.d);
  return g;
}

Operator parse_operator(const std::string& text, long d) {
  if (text.empty()) throw std::invalid_argument("empty operator spec");
  if (text[0] == '[') return Operator::from_matrix(matrix_from_json(json::parse(text)));
  if (text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw std::invalid_argument("cannot open operator file " + text.substr(1));
    json j;
    in >> j;
    return Operator::from_matrix(matrix_from_json(j));
  }
  return Operator::preset(text, d);
}

}  // namespace haarcorr
