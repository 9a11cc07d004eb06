#pragma once

#include "hmf/classgroups.hpp"
#include "hmf/congruence.hpp"
#include "hmf/euler.hpp"
#include "hmf/local_constants.hpp"

#include "json.hpp"

#include <string>

namespace hmf {

inline constexpr const char* kReportSchema = "hmfcong-report/1";

enum class RunStatus { ok, mismatch, inconclusive };
std::string to_string(RunStatus s);
/// 0 ok, 3 mismatch, 4 inconclusive (2 is reserved for configuration errors).
int exit_code(RunStatus s);
RunStatus worst(RunStatus a, RunStatus b);

nlohmann::json to_json(const QExpansion& e);
nlohmann::json to_json(const CongruenceReport& r);
nlohmann::json to_json(const OrbitDiagnostics& d);
nlohmann::json to_json(const EpsilonValue& v);
nlohmann::json to_json(const KatzDeligneResult& r);
nlohmann::json to_json(const ConductorDiscriminantReport& r);
nlohmann::json to_json(const InductivityReport& r);
nlohmann::json to_json(const EpsilonInductivityReport& r);
nlohmann::json to_json(const EulerIdentityReport& r);
nlohmann::json to_json(const FinAbGroup& g);
nlohmann::json to_json(const AssumptionReport& r);

/// Envelope {schema, command, status, result}.
nlohmann::json make_report(const std::string& command, RunStatus status, nlohmann::json result);
/// Stable text: sorted keys, two-space indent, trailing newline.
std::string dump_report(const nlohmann::json& j);
nlohmann::json parse_report(const std::string& text);
/// Writes <dir>/<name>.json; returns the path.
std::string write_report(const nlohmann::json& j, const std::string& dir, const std::string& name);

}  // namespace hmf
