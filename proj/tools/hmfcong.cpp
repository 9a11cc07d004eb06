// hmfcong: command-line front end over the hmf library.
#include "hmf/config.hpp"
#include "hmf/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace hmf;
using nlohmann::json;

namespace {

struct Globals {
  std::string config_path;
  std::string json_path;
  bool quiet = false;
};

struct Outcome {
  std::string command;
  RunStatus status = RunStatus::ok;
  json result;
};

Config load_config(const Globals& g) { return g.config_path.empty() ? default_config() : load_config_file(g.config_path); }

void emit(const Globals& g, const Outcome& o) {
  json rep = make_report(o.command, o.status, o.result);
  if (!g.json_path.empty()) {
    std::ofstream out(g.json_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + g.json_path);
    out << dump_report(rep);
  }
  if (const char* dir = std::getenv("HMF_REPORT_DIR"); dir && *dir) {
    std::string name = o.command;
    for (char& c : name)
      if (c == ' ') c = '_';
    write_report(rep, dir, name);
  }
  if (!g.quiet) std::cout << "status: " << to_string(o.status) << "\n";
}

void say(const Globals& g, const std::string& line) {
  if (!g.quiet) std::cout << line << "\n";
}

QExpansion read_expansion_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return read_qexpansion(in);
}

void write_expansion(const QExpansion& e, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    write_qexpansion(std::cout, e);
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ConfigError("cannot write " + out_path);
  write_qexpansion(out, e);
}

const PhiSpec& find_phi(const LoadedPreset& lp, const std::string& label) {
  for (const auto& s : lp.spec.battery)
    if (s.label == label) return s;
  if (lp.spec.negative_control && lp.spec.negative_control->label == label) return *lp.spec.negative_control;
  throw ConfigError("preset " + lp.spec.name + " has no phi labelled '" + label + "'");
}

LocConstFn phi_by_label(const LoadedPreset& lp, const std::string& label, int k) {
  if (lp.spec.negative_control && (label == "negative" || label == lp.spec.negative_control->label))
    return *build_negative_control(lp, k);
  find_phi(lp, label);
  for (auto& f : build_battery(lp, k))
    if (f.label() == label) return f;
  throw ConfigError("unreachable");
}

/// The ramified prime of a tower over Q.
std::int64_t ramified_rational_prime(const TowerData& t) {
  BigInt d = abs(t.top->discriminant);
  for (long q = 2; q <= 1000; ++q)
    if (d % q == 0) return q;
  throw ConfigError(t.label + ": no small ramified prime");
}

/// Test characters for the inductivity checks: a nontrivial primitive
/// character for each listed conductor, plus quadratic characters.
std::vector<DirichletChar> inductivity_characters(std::int64_t q) {
  std::vector<DirichletChar> out;
  for (std::int64_t M : {q, q * q, std::int64_t(3), std::int64_t(5), std::int64_t(7), std::int64_t(9), std::int64_t(27)}) {
    if (M > 50) continue;
    for (const auto& c : dirichlet_characters(M))
      if (is_primitive(c) && !c.is_trivial()) {
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
        break;
      }
  }
  for (std::int64_t r : {q, std::int64_t(7)})
    if (r % 2) {
      auto c = quadratic_character(r);
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
  return out;
}

// ---- subcommands ----

struct EisArgs {
  std::string preset, phi, field, side = "top", in, out = "-";
  int k = 2;
  std::int64_t bound = 30, p = 3;
  bool sanity = false;
};

Outcome eis_expand(const Globals& g, const EisArgs& a) {
  Outcome o{"eis expand", RunStatus::ok, {}};
  QExpansion e;
  if (!a.field.empty()) {
    auto cfg = load_config(g);
    auto it = cfg.fields.find(a.field);
    if (it == cfg.fields.end()) throw ConfigError("unknown field '" + a.field + "'");
    auto K = build_field(it->second);
    std::vector<QVector> us;
    for (const auto& u : it->second.units) {
      QVector v(K->n);
      for (int i = 0; i < K->n; ++i) v(i) = Rational(static_cast<long>(u[static_cast<std::size_t>(i)]));
      us.push_back(v);
    }
    auto U = units_from_preset(*K, us);
    auto R = std::make_shared<ResidueRing>(K, unit_ideal(*K));
    auto one = constant_fn(R, a.k, BigInt(1));
    one.set_label("1");
    ExpandOptions eo;
    eo.sanity = true;
    eo.level_label = "1";
    e = expand(*K, unit_ideal(*K), unit_ideal(*K), one, a.k, Rational(a.bound), U, eo);
  } else {
    if (a.preset.empty() || a.phi.empty()) throw ConfigError("eis expand: give --field, or --preset with --phi");
    auto lp = load_preset(load_config(g), a.preset);
    auto phi = phi_by_label(lp, a.phi, a.k);
    ExpandOptions eo;
    eo.sanity = a.sanity;
    if (a.side == "top") {
      eo.level_label = format_ideal(phi.ring().modulus());
      e = expand(*lp.top, unit_ideal(*lp.top), extend_ideal(lp.tower, lp.b), phi, a.k, Rational(a.bound),
                 lp.tower.top_units, eo);
    } else if (a.side == "base") {
      auto base_phi = pullback_ver(phi, lp.ver);
      eo.level_label = format_ideal(lp.ver.base->modulus());
      e = expand(*lp.base, unit_ideal(*lp.base), lp.b, base_phi, a.k, Rational(a.bound), lp.tower.base_units, eo);
    } else {
      throw ConfigError("--side must be top or base");
    }
  }
  write_expansion(e, a.out);
  o.result = to_json(e);
  return o;
}

Outcome eis_restrict(const Globals& g, const EisArgs& a) {
  if (a.preset.empty() || a.in.empty()) throw ConfigError("eis restrict: --preset and --in are required");
  auto lp = load_preset(load_config(g), a.preset);
  auto e = restrict_diagonal(read_expansion_file(a.in), lp.tower, Rational(a.bound));
  write_expansion(e, a.out);
  return {"eis restrict", RunStatus::ok, to_json(e)};
}

Outcome eis_frobenius(const Globals&, const EisArgs& a) {
  if (a.in.empty()) throw ConfigError("eis frobenius: --in is required");
  auto e = frobenius_twist(read_expansion_file(a.in), a.p);
  write_expansion(e, a.out);
  return {"eis frobenius", RunStatus::ok, to_json(e)};
}

struct CongArgs {
  std::string preset, phi = "battery";
  std::vector<int> ks;
  std::int64_t bound = 0, p = 0, xi = 0;
  bool forced = false, orbits = false;
  int modulus_power = 1;
};

Outcome congruence_check(const Globals& g, const CongArgs& a) {
  auto lp = load_preset(load_config(g), a.preset);
  if (a.p && a.p != lp.spec.p) throw ConfigError("--p " + std::to_string(a.p) + " does not match the preset");
  const std::int64_t bound = a.bound ? a.bound : lp.spec.bound;
  const auto ks = a.ks.empty() ? lp.spec.weights : a.ks;
  Outcome o{"congruence check", RunStatus::ok, json::array()};
  CongruenceOptions opt;
  opt.forced = a.forced;
  opt.orbit_check = a.orbits;
  opt.modulus_power = a.modulus_power;
  for (int k : ks) {
    std::vector<LocConstFn> phis;
    if (a.phi == "battery")
      phis = build_battery(lp, k);
    else
      phis.push_back(phi_by_label(lp, a.phi, k));
    for (const auto& phi : phis) {
      auto r = check_congruence(phi, lp.tower, lp.ver, lp.b, k, Rational(bound), opt, lp.spec.name);
      RunStatus st = r.refused ? RunStatus::inconclusive
                     : (!r.mismatches.empty() || !r.orbits_ok) ? RunStatus::mismatch
                                                               : RunStatus::ok;
      o.status = worst(o.status, st);
      std::ostringstream line;
      line << "k=" << k << " phi=" << r.phi_label << " compared=" << r.exponents_compared
           << " mismatches=" << r.mismatches.size();
      if (r.refused) line << " refused (" << r.precondition_failures.size() << " precondition failures)";
      if (a.orbits) line << " orbits=" << (r.orbits_ok ? "ok" : "FAIL");
      say(g, line.str());
      o.result.push_back(to_json(r));
    }
  }
  return o;
}

Outcome congruence_orbits(const Globals& g, const CongArgs& a) {
  auto lp = load_preset(load_config(g), a.preset);
  if (lp.base->n != 1) throw ConfigError("congruence orbits: --xi takes a rational integer; base must be Q");
  if (a.xi <= 0) throw ConfigError("congruence orbits: --xi must be positive");
  const int k = a.ks.empty() ? lp.spec.weights.front() : a.ks.front();
  auto phi = phi_by_label(lp, a.phi == "battery" ? lp.spec.battery.front().label : a.phi, k);
  QVector xi(1);
  xi(0) = Rational(static_cast<long>(a.xi));
  auto d = orbit_diagnostics(xi, lp.tower, lp.b, phi, k);
  const bool ok = d.sizes_ok && d.free_subtotals_vanish && d.fixed_exponents_in_pb && d.fixed_descend && d.fixed_match_base;
  std::ostringstream line;
  line << "xi=" << a.xi << " orbits:";
  for (const auto& [s, c] : d.size_counts) line << " " << c << "x" << s;
  line << " total=" << d.total << " fixed=" << d.fixed_count;
  say(g, line.str());
  return {"congruence orbits", ok ? RunStatus::ok : RunStatus::mismatch, to_json(d)};
}

struct EpsArgs {
  std::int64_t modulus = 5, max_modulus = 25;
  std::string chr = "quadratic", preset;
  std::string delta = "1";
};

Outcome epsilon_gauss(const Globals& g, const EpsArgs& a) {
  Outcome o{"epsilon gauss", RunStatus::ok, json::array()};
  std::vector<DirichletChar> chars;
  if (a.chr == "quadratic") {
    if (a.modulus < 3 || a.modulus % 2 == 0 || !is_prime(a.modulus))
      throw ConfigError("--char quadratic needs an odd prime modulus");
    chars.push_back(quadratic_character(a.modulus));
  } else if (a.chr == "all") {
    for (const auto& c : dirichlet_characters(a.modulus))
      if (is_primitive(c)) chars.push_back(c);
  } else {
    throw ConfigError("--char must be quadratic or all");
  }
  for (const auto& c : chars) {
    auto G = gauss_sum(c);
    auto a2 = to_rat(G.abs2());
    const bool ok = a2.is_rational() && a2.to_string() == std::to_string(conductor(c));
    json j = {{"chi", format_char(c)}, {"conductor", conductor(c)}, {"G", G.to_string()},
              {"abs2", a2.to_string()}, {"abs2_is_conductor", ok}};
    if (c.order == 2) j["G_squared"] = (G * G).to_string();
    if (!ok) o.status = RunStatus::mismatch;
    say(g, format_char(c) + ": |G|^2 = " + a2.to_string() + (c.order == 2 ? ", G^2 = " + (G * G).to_string() : ""));
    o.result.push_back(j);
  }
  return o;
}

Outcome epsilon_katz_deligne(const Globals& g, const EpsArgs& a) {
  Outcome o{"epsilon katz-deligne", RunStatus::ok, json::object()};
  const Rational delta(a.delta);
  json rows = json::array();
  int total = 0, holds = 0, ratio = 0, skipped = 0;
  for (std::int64_t N = 3; N <= a.max_modulus; ++N)
    for (const auto& c : dirichlet_characters(N)) {
      if (!is_primitive(c)) continue;
      for (std::int64_t q = 2; q <= N; ++q) {
        if (!is_prime(q) || N % q) continue;
        if (q == 2) {
          ++skipped;
          continue;
        }
        auto r = check_katz_deligne(c, q, delta);
        ++total;
        holds += r.holds;
        ratio += r.ratio_is_chi_of_minus_two_inverse;
        rows.push_back(to_json(r));
      }
    }
  o.result = {{"delta", a.delta}, {"checked", total}, {"holds", holds}, {"ratio_chi_minus_two_inverse", ratio},
              {"skipped_q2", skipped}, {"rows", rows}};
  if (holds != total) o.status = RunStatus::mismatch;
  say(g, "Katz-Deligne: " + std::to_string(holds) + "/" + std::to_string(total) + " exact; ratio chi_q(-2)^-1 in " +
             std::to_string(ratio) + "; q = 2 skipped " + std::to_string(skipped));
  return o;
}

Outcome epsilon_inductivity(const Globals& g, const EpsArgs& a) {
  auto lp = load_preset(load_config(g), a.preset);
  Outcome o{"epsilon inductivity", RunStatus::ok, json::object()};
  const auto& t = lp.tower;
  const std::int64_t q = ramified_rational_prime(t);
  auto chars = galois_characters(t);
  auto cd = conductor_discriminant(t, chars);
  if (!cd.ok) o.status = RunStatus::mismatch;
  std::ostringstream cds;
  cds << "conductor-discriminant: |disc| = " << cd.disc << " =";
  for (auto c : cd.conductors) cds << " " << c;
  cds << (cd.ok ? " ok" : " FAIL");
  say(g, cds.str());
  json ind = json::array(), eps = json::array();
  int exact_nontrivial = 0;
  for (const auto& phi : inductivity_characters(q)) {
    auto ir = inductivity_degree_zero(phi, t, chars, q);
    auto er = hmf::epsilon_inductivity(phi, t, chars, q);
    if (!ir.holds || !er.abs2_equal) o.status = RunStatus::mismatch;
    exact_nontrivial += er.exact_equal && !phi.is_trivial();
    say(g, format_char(phi) + ": n = " + std::to_string(ir.lhs) + " vs " + std::to_string(ir.rhs) +
               ", eps |.|^2 " + (er.abs2_equal ? "equal" : "DIFFER") + ", exact " + (er.exact_equal ? "equal" : "differ"));
    ind.push_back(to_json(ir));
    eps.push_back(to_json(er));
  }
  if (exact_nontrivial == 0) o.status = RunStatus::mismatch;
  json chs = json::array();
  for (const auto& c : chars) chs.push_back(format_char(c));
  o.result = {{"preset", lp.spec.name}, {"q", q}, {"galois_characters", chs}, {"conductor_discriminant", to_json(cd)},
              {"inductivity", ind}, {"epsilon", eps}, {"exact_nontrivial", exact_nontrivial}};
  return o;
}

struct EulerArgs {
  int max_e = 5, truncation = 30;
  std::string form = "inverse-t";
};

Outcome euler_identity(const Globals& g, const EulerArgs& a) {
  EulerForm f;
  if (a.form == "inverse-t")
    f = EulerForm::inverse_t;
  else if (a.form == "direct-t")
    f = EulerForm::direct_t;
  else
    throw ConfigError("--form must be inverse-t or direct-t");
  if (a.max_e < 0 || a.truncation < a.max_e + 2) throw ConfigError("--truncation must be at least max-e + 2");
  Outcome o{"euler identity", RunStatus::ok, json::array()};
  for (int e = 0; e <= a.max_e; ++e) {
    auto r = verify_euler_identity(e, a.truncation, f);
    if (!r.holds) o.status = RunStatus::mismatch;
    say(g, "e=" + std::to_string(e) + (r.holds ? " holds" : " fails at t^" + std::to_string(r.first_mismatch)));
    o.result.push_back(to_json(r));
  }
  return o;
}

struct ClassArgs {
  std::string field = "Q", base = "Q", preset;
  std::int64_t d0 = 0, ray_j = 0, cap = 10'000, prime_bound = 0;
  bool narrow = false;
};

Outcome classgrp_compute(const Globals& g, const ClassArgs& a) {
  auto cfg = load_config(g);
  ClassGroupOptions opt;
  opt.cap = a.cap;
  opt.prime_bound = a.prime_bound;
  auto field_of = [&](const std::string& name) {
    auto it = cfg.fields.find(name);
    if (it == cfg.fields.end()) throw ConfigError("unknown field '" + name + "'");
    auto K = build_field(it->second);
    std::vector<QVector> us;
    for (const auto& u : it->second.units) {
      QVector v(K->n);
      for (int i = 0; i < K->n; ++i) v(i) = Rational(static_cast<long>(u[static_cast<std::size_t>(i)]));
      us.push_back(v);
    }
    return std::make_pair(K, units_from_preset(*K, us));
  };
  Outcome o{"classgrp compute", RunStatus::ok, json::object()};
  FinAbGroup G;
  std::string what;
  if (a.d0 != 0) {
    if (a.d0 > 0) throw ConfigError("--d0 must be negative");
    auto [F, U] = field_of(a.base);
    CMQuadExt cm;
    try {
      cm = make_cm(a.base + "(sqrt" + std::to_string(a.d0) + ")", F, a.d0, U);
    } catch (const MathError& e) {
      throw ConfigError(e.what());
    }
    if (a.ray_j > 0) {
      if (F->n != 1) throw ConfigError("--ray-j takes a rational integer; base must be Q");
      QVector j(1);
      j(0) = Rational(static_cast<long>(a.ray_j));
      G = ray_class_minus(cm, principal_ideal(*F, j), opt);
      what = "Cl^-(" + std::to_string(a.ray_j) + ") of " + cm.label;
      if (auto f = ray_minus_order_formula(cm, principal_ideal(*F, j), opt)) {
        o.result["order_formula"] = f->get_str();
        if (G.status == GroupStatus::exact && G.order() != *f) o.status = RunStatus::mismatch;
      }
    } else {
      G = class_group(cm, opt);
      what = "Cl of " + cm.label;
    }
  } else {
    auto [K, U] = field_of(a.field);
    G = a.narrow ? narrow_class_group(*K, U, opt) : class_group(*K, U, opt);
    what = std::string(a.narrow ? "Cl+ of " : "Cl of ") + a.field;
  }
  if (G.status != GroupStatus::exact) o.status = worst(o.status, RunStatus::inconclusive);
  o.result["group"] = what;
  o.result["result"] = to_json(G);
  say(g, what + " = " + G.to_string());
  return o;
}

Outcome assumptions_check(const Globals& g, const ClassArgs& a) {
  auto lp = load_preset(load_config(g), a.preset);
  if (!lp.spec.cm) throw ConfigError("preset " + a.preset + " has no cm section");
  if (!splits_in_quadratic(lp.spec.cm->d0, lp.spec.p))
    throw ConfigError("p = " + std::to_string(lp.spec.p) + " does not split in Q(sqrt(" + std::to_string(lp.spec.cm->d0) +
                      "))");
  ClassGroupOptions opt = lp.spec.classgroup;
  if (a.cap != 10'000) opt.cap = a.cap;
  auto r = check_main_assumptions(lp.tower, *lp.cm, *lp.cm2, lp.n, lp.f, opt);
  say(g, "h1: " + to_string(r.h1) + "  (Cl-_K(J) = " + r.minus_base.to_string() + ", Cl-_K'(J) = " + r.minus_top.to_string() +
             ", image " + r.image_order.get_str() + ", Gamma-fixed " + r.fixed_order.get_str() + ")");
  say(g, "h2: " + to_string(r.h2) + "  (Cl_F = " + r.cl_base.to_string() + ", Cl_F' = " + r.cl_top.to_string() + ")");
  say(g, "h3: " + to_string(r.h3));
  say(g, std::string("side conditions: p splits in K0 ") + (r.p_splits_in_k0 ? "yes" : "no") +
             ", ramified primes split in K " + (r.ramified_split_in_k ? "yes" : "no"));
  Outcome o{"assumptions check", RunStatus::ok, to_json(r)};
  o.result["preset"] = lp.spec.name;
  for (auto h : {r.h1, r.h2, r.h3}) {
    if (h == Hypothesis::fails) o.status = worst(o.status, RunStatus::mismatch);
    if (h == Hypothesis::inconclusive) o.status = worst(o.status, RunStatus::inconclusive);
  }
  if (!r.side_conditions()) o.status = worst(o.status, RunStatus::mismatch);
  return o;
}

/// Fast checks on every preset of the configuration.
Outcome selftest_all(const Globals& g) {
  auto cfg = load_config(g);
  Outcome o{"selftest all", RunStatus::ok, json::object()};
  auto check = [&](const std::string& name, bool ok) {
    o.result[name] = ok;
    if (!ok) o.status = RunStatus::mismatch;
    say(g, name + ": " + (ok ? "ok" : "FAIL"));
  };
  for (const auto& [name, ps] : cfg.presets) {
    auto lp = load_preset(cfg, name);
    check("preset " + name + " loads with xi", lp.tower.xi.has_value());
    bool inv = true;
    for (int k : ps.weights)
      for (const auto& phi : build_battery(lp, k)) inv = inv && gamma_invariant(phi, lp.tower);
    check("preset " + name + " battery Gamma-invariant", inv);
  }
  bool euler = true;
  for (int e = 0; e <= 5; ++e) euler = euler && verify_euler_identity(e, 30).holds;
  check("euler identity e <= 5", euler);
  bool gauss = true;
  for (std::int64_t N = 3; N <= 20; ++N)
    for (const auto& c : dirichlet_characters(N))
      if (is_primitive(c)) gauss = gauss && to_rat(gauss_sum(c).abs2()).to_string() == std::to_string(conductor(c));
  check("gauss sums |G|^2 = f, f <= 20", gauss);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hmfcong: exact checks for Eisenstein congruences and local constants"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "preset catalogue (JSON); default: the built-in catalogue");
  app.add_option("--json", g.json_path, "write the JSON report to this file");
  app.add_flag("-q,--quiet", g.quiet, "suppress human-readable output");

  std::function<Outcome()> action;

  EisArgs eis;
  auto* eis_cmd = app.add_subcommand("eis", "Eisenstein q-expansions");
  eis_cmd->require_subcommand(1);
  auto* ex = eis_cmd->add_subcommand("expand", "q-expansion of E_k");
  ex->add_option("--preset", eis.preset);
  ex->add_option("--phi", eis.phi, "battery label, or 'negative'");
  ex->add_option("--field", eis.field, "constant phi = 1 at level 1 over this field");
  ex->add_option("--side", eis.side, "top or base")->check(CLI::IsMember({"top", "base"}));
  ex->add_option("--k", eis.k)->check(CLI::PositiveNumber);
  ex->add_option("--bound", eis.bound, "trace bound")->check(CLI::PositiveNumber);
  ex->add_flag("--sanity", eis.sanity, "skip the units-support requirement");
  ex->add_option("--out", eis.out, "output file, '-' for stdout");
  ex->callback([&] { action = [&] { return eis_expand(g, eis); }; });
  auto* rs = eis_cmd->add_subcommand("restrict", "diagonal restriction to the base");
  rs->add_option("--preset", eis.preset)->required();
  rs->add_option("--in", eis.in)->required();
  rs->add_option("--bound", eis.bound)->check(CLI::PositiveNumber);
  rs->add_option("--out", eis.out);
  rs->callback([&] { action = [&] { return eis_restrict(g, eis); }; });
  auto* fr = eis_cmd->add_subcommand("frobenius", "q^a -> q^(pa)");
  fr->add_option("--p", eis.p)->check(CLI::PositiveNumber);
  fr->add_option("--in", eis.in)->required();
  fr->add_option("--out", eis.out);
  fr->callback([&] { action = [&] { return eis_frobenius(g, eis); }; });

  CongArgs cong;
  auto* cg = app.add_subcommand("congruence", "the diagonal-restriction congruence");
  cg->require_subcommand(1);
  auto* cc = cg->add_subcommand("check", "compare res(E_k(phi')) with Frob_p(E_pk(phi)) mod p");
  cc->add_option("--preset", cong.preset)->required();
  cc->add_option("--phi", cong.phi, "'battery', a battery label, or 'negative'");
  cc->add_option("--k", cong.ks, "weights (default: the preset's)");
  cc->add_option("--bound", cong.bound, "trace bound (default: the preset's)");
  cc->add_option("--p", cong.p, "must match the preset");
  cc->add_flag("--forced", cong.forced, "run even when preconditions fail");
  cc->add_flag("--orbits", cong.orbits, "orbit diagnostics on every exponent");
  cc->add_option("--modulus-power", cong.modulus_power)->check(CLI::Range(1, 4));
  cc->callback([&] { action = [&] { return congruence_check(g, cong); }; });
  auto* co = cg->add_subcommand("orbits", "Gamma-orbit diagnostics at one exponent");
  co->add_option("--preset", cong.preset)->required();
  co->add_option("--phi", cong.phi);
  co->add_option("--k", cong.ks);
  co->add_option("--xi", cong.xi)->required();
  co->callback([&] { action = [&] { return congruence_orbits(g, cong); }; });

  EpsArgs eps;
  auto* ep = app.add_subcommand("epsilon", "Gauss sums and local constants");
  ep->require_subcommand(1);
  auto* gs = ep->add_subcommand("gauss", "Gauss sums of primitive characters");
  gs->add_option("--modulus", eps.modulus)->check(CLI::Range(1, 100000));
  gs->add_option("--char", eps.chr, "quadratic or all");
  gs->callback([&] { action = [&] { return epsilon_gauss(g, eps); }; });
  auto* kd = ep->add_subcommand("katz-deligne", "epsilon factors against Katz's Local");
  kd->add_option("--max-modulus", eps.max_modulus)->check(CLI::Range(3, 200));
  kd->add_option("--delta", eps.delta, "rational, a unit at every odd q");
  kd->callback([&] { action = [&] { return epsilon_katz_deligne(g, eps); }; });
  auto* in = ep->add_subcommand("inductivity", "conductor-discriminant and inductivity in degree zero");
  in->add_option("--preset", eps.preset)->required();
  in->callback([&] { action = [&] { return epsilon_inductivity(g, eps); }; });

  EulerArgs eu;
  auto* el = app.add_subcommand("euler", "Euler-factor identity");
  el->require_subcommand(1);
  auto* ei = el->add_subcommand("identity", "inner sum against its closed form");
  ei->add_option("--max-e", eu.max_e)->check(CLI::Range(0, 50));
  ei->add_option("--truncation", eu.truncation)->check(CLI::Range(2, 500));
  ei->add_option("--form", eu.form, "inverse-t or direct-t");
  ei->callback([&] { action = [&] { return euler_identity(g, eu); }; });

  ClassArgs cl;
  auto* cgp = app.add_subcommand("classgrp", "class groups");
  cgp->require_subcommand(1);
  auto* cmp = cgp->add_subcommand("compute", "class, narrow or minus ray class group");
  cmp->add_option("--field", cl.field, "totally real field from the catalogue");
  cmp->add_flag("--narrow", cl.narrow);
  cmp->add_option("--d0", cl.d0, "CM field base(sqrt(d0))");
  cmp->add_option("--base", cl.base, "base field for --d0");
  cmp->add_option("--ray-j", cl.ray_j, "minus ray class group modulo j O_K (base Q)");
  cmp->add_option("--cap", cl.cap, "lattice points per principality search")->check(CLI::PositiveNumber);
  cmp->add_option("--prime-bound", cl.prime_bound);
  cmp->callback([&] { action = [&] { return classgrp_compute(g, cl); }; });

  auto* as = app.add_subcommand("assumptions", "hypotheses h1, h2, h3 for a preset");
  as->require_subcommand(1);
  auto* ac = as->add_subcommand("check", "h1, h2, h3 and side conditions for a preset");
  ac->add_option("--preset", cl.preset)->required();
  ac->add_option("--cap", cl.cap)->check(CLI::PositiveNumber);
  ac->callback([&] { action = [&] { return assumptions_check(g, cl); }; });

  auto* st = app.add_subcommand("selftest", "quick self checks");
  st->require_subcommand(1);
  auto* sa = st->add_subcommand("all", "every quick check against the configuration");
  sa->callback([&] { action = [&] { return selftest_all(g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    Outcome o = action();
    emit(g, o);
    return exit_code(o.status);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    std::cerr << "mathematical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
