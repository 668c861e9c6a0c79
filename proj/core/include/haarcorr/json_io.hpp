#pragma once

#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "haarcorr/dual_unitary.hpp"
#include "haarcorr/mc.hpp"
#include "haarcorr/mps_moments.hpp"
#include "haarcorr/operators.hpp"
#include "haarcorr/weingarten.hpp"

namespace haarcorr {

inline constexpr const char* kToolVersion = "0.1.0";

// Matrices are emitted and parsed as row-major arrays of [re, im] pairs.
nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j);

nlohmann::json weingarten_to_json(const WeingartenTable& table);
std::string weingarten_to_csv(const WeingartenTable& table);

nlohmann::json moment_to_json(const MomentResult& r);
nlohmann::json estimate_to_json(const McEstimate& e);
nlohmann::json report_to_json(const ComparisonReport& r);

nlohmann::json gate_to_json(const DualGate& gate);
DualGate gate_from_json(const nlohmann::json& j);

// Operator spec: a preset name, '@file.json', or inline JSON matrix text.
Operator parse_operator(const std::string& text, long d);

}  // namespace haarcorr
