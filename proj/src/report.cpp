#include "hmf/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace hmf {

using nlohmann::json;

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::ok: return "ok";
    case RunStatus::mismatch: return "mismatch";
    default: return "inconclusive";
  }
}

int exit_code(RunStatus s) {
  switch (s) {
    case RunStatus::ok: return 0;
    case RunStatus::mismatch: return 3;
    default: return 4;
  }
}

RunStatus worst(RunStatus a, RunStatus b) {
  if (a == RunStatus::mismatch || b == RunStatus::mismatch) return RunStatus::mismatch;
  if (a == RunStatus::inconclusive || b == RunStatus::inconclusive) return RunStatus::inconclusive;
  return RunStatus::ok;
}

namespace {

std::string s(const BigInt& z) { return z.get_str(); }
std::string s(const Rational& q) { return to_string(q); }

json key_json(const ExpKey& k) {
  json c = json::array();
  for (const auto& x : k.coords) c.push_back(s(x));
  return {{"trace", s(k.trace)}, {"coords", c}};
}

json size_map(const std::map<std::size_t, std::size_t>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

}  // namespace

json to_json(const QExpansion& e) {
  std::ostringstream os;
  write_qexpansion(os, e);
  return {{"field", e.field}, {"k", e.k}, {"phi", e.phi}, {"level", e.level}, {"trace_bound", s(e.trace_bound)},
          {"terms", e.coeffs.size()}, {"text", os.str()}};
}

json to_json(const CongruenceReport& r) {
  json mm = json::array();
  for (const auto& m : r.mismatches) mm.push_back({{"exponent", key_json(m.exponent)}, {"lhs", s(m.lhs)}, {"rhs", s(m.rhs)}});
  json j = {{"preset", r.preset},
            {"phi", r.phi_label},
            {"k", r.k},
            {"p", r.p},
            {"bound", s(r.bound)},
            {"modulus", s(r.modulus)},
            {"preconditions",
             {{"gamma_invariant", r.gamma_invariant},
              {"units_supported", r.units_supported},
              {"b_prime_to_p", r.b_prime_to_p},
              {"xi_verified", r.xi_verified},
              {"failures", r.precondition_failures}}},
            {"refused", r.refused},
            {"lhs_hash", r.lhs_hash},
            {"rhs_hash", r.rhs_hash},
            {"lhs_terms", r.lhs.coeffs.size()},
            {"rhs_terms", r.rhs.coeffs.size()},
            {"exponents_compared", r.exponents_compared},
            {"mismatches", mm}};
  if (!r.orbit_sizes.empty() || !r.orbit_problems.empty())
    j["orbits"] = {{"sizes", size_map(r.orbit_sizes)}, {"ok", r.orbits_ok}, {"problems", r.orbit_problems}};
  return j;
}

json to_json(const OrbitDiagnostics& d) {
  json xi = json::array();
  for (Eigen::Index i = 0; i < d.xi.size(); ++i) xi.push_back(s(d.xi(i)));
  return {{"xi", xi},
          {"sizes", size_map(d.size_counts)},
          {"sizes_ok", d.sizes_ok},
          {"free_subtotals_vanish", d.free_subtotals_vanish},
          {"fixed_exponents_in_pb", d.fixed_exponents_in_pb},
          {"fixed_descend", d.fixed_descend},
          {"fixed_match_base", d.fixed_match_base},
          {"fixed_count", d.fixed_count},
          {"total", s(d.total)},
          {"fixed_total", s(d.fixed_total)},
          {"problems", d.problems}};
}

json to_json(const EpsilonValue& v) {
  json j = {{"value", v.value.to_string()}, {"base", v.base}, {"half_exp", v.half_exp},
            {"abs2", v.abs2().to_string()}, {"text", v.to_string()}};
  if (auto e = v.exact()) j["exact"] = e->to_string();
  return j;
}

json to_json(const KatzDeligneResult& r) {
  return {{"chi", r.chi_label},
          {"q", r.q},
          {"delta", s(r.delta)},
          {"epsilon", r.epsilon.to_string()},
          {"local", r.katz.to_string()},
          {"rhs", r.rhs.to_string()},
          {"holds", r.holds},
          {"ratio", {{"order", r.ratio_order}, {"exp", r.ratio_exp}}},
          {"ratio_is_chi_of_minus_two_inverse", r.ratio_is_chi_of_minus_two_inverse}};
}

json to_json(const ConductorDiscriminantReport& r) {
  json loc = json::array();
  for (const auto& l : r.local)
    loc.push_back({{"q", l.q}, {"prime", l.prime}, {"n_psi_top", l.n_psi_top}, {"sum_n_chi", l.sum_n_chi},
                   {"n_psi_base", l.n_psi_base}, {"ok", l.ok}});
  return {{"disc", s(r.disc)}, {"conductors", r.conductors}, {"global_ok", r.global_ok}, {"local", loc}, {"ok", r.ok}};
}

json to_json(const InductivityReport& r) {
  return {{"phi", r.phi_label}, {"q", r.q}, {"lhs", r.lhs}, {"n_phichi", r.n_phichi},
          {"n_chi", r.n_chi},   {"rhs", r.rhs}, {"holds", r.holds}};
}

json to_json(const EpsilonInductivityReport& r) {
  return {{"phi", r.phi_label}, {"q", r.q}, {"lhs", to_json(r.lhs)}, {"rhs", to_json(r.rhs)},
          {"abs2_equal", r.abs2_equal}, {"exact_equal", r.exact_equal}};
}

json to_json(const EulerIdentityReport& r) {
  json j = {{"e", r.e}, {"T", r.T}, {"holds", r.holds}};
  if (!r.holds) j["first_mismatch"] = r.first_mismatch;
  return j;
}

json to_json(const FinAbGroup& g) {
  json d = json::array();
  for (const auto& x : g.divisors) d.push_back(s(x));
  json j = {{"status", g.status == GroupStatus::exact ? "exact" : "inconclusive"},
            {"cap", g.cap},
            {"generators", g.generators},
            {"divisors", d},
            {"text", g.to_string()}};
  if (g.status == GroupStatus::exact) j["order"] = s(g.order());
  if (!g.note.empty()) j["note"] = g.note;
  return j;
}

json to_json(const AssumptionReport& r) {
  return {{"h1", to_string(r.h1)},
          {"h2", to_string(r.h2)},
          {"h3", to_string(r.h3)},
          {"j", format_ideal(r.j)},
          {"cl_base", to_json(r.cl_base)},
          {"cl_top", to_json(r.cl_top)},
          {"minus_base", to_json(r.minus_base)},
          {"minus_top", to_json(r.minus_top)},
          {"image_order", s(r.image_order)},
          {"fixed_order", s(r.fixed_order)},
          {"generators_fixed", r.generators_fixed},
          {"p_splits_in_k0", r.p_splits_in_k0},
          {"ramified_split_in_k", r.ramified_split_in_k},
          {"notes", r.notes}};
}

json make_report(const std::string& command, RunStatus status, json result) {
  return {{"schema", kReportSchema}, {"command", command}, {"status", to_string(status)}, {"result", std::move(result)}};
}

std::string dump_report(const json& j) { return j.dump(2) + "\n"; }

json parse_report(const std::string& text) { return json::parse(text); }

std::string write_report(const json& j, const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  auto path = (std::filesystem::path(dir) / (name + ".json")).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report " + path);
  out << dump_report(j);
  return path;
}

}  // namespace hmf
