#include "hmf/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace hmf {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
}

template <typename T>
T get(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

template <typename T>
T get_or(const json& j, const std::string& key, const T& def, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : def;
}

PhiSpec parse_phi(const json& j, const std::string& where) {
  PhiSpec s;
  s.label = get<std::string>(j, "label", where);
  const std::string w = where + "[" + s.label + "]";
  const auto kind = get<std::string>(j, "kind", w);
  if (kind == "norm_char") {
    check_keys(j, {"label", "kind", "M", "chi_x_odd", "chi_x_even", "chi_y", "coeff"}, w);
    s.kind = PhiKind::norm_char;
    s.M = get<std::int64_t>(j, "M", w);
    s.chi_x_odd = get<Coords>(j, "chi_x_odd", w);
    s.chi_x_even = get<Coords>(j, "chi_x_even", w);
    s.chi_y = get<Coords>(j, "chi_y", w);
    s.coeff = get_or<std::int64_t>(j, "coeff", 1, w);
    const auto M = static_cast<std::size_t>(s.M);
    if (s.M < 1 || s.chi_x_odd.size() != M || s.chi_x_even.size() != M || s.chi_y.size() != M)
      throw ConfigError(w + ": character tables must have M entries");
  } else if (kind == "symmetrized") {
    check_keys(j, {"label", "kind", "seeds", "unit_sym", "gamma_sym"}, w);
    s.kind = PhiKind::symmetrized;
    for (const auto& p : get<std::vector<std::vector<Coords>>>(j, "seeds", w)) {
      if (p.size() != 2) throw ConfigError(w + ": a seed is a pair [x, y]");
      s.seeds.emplace_back(p[0], p[1]);
    }
    if (s.seeds.empty()) throw ConfigError(w + ": no seeds");
    s.unit_sym = get_or<bool>(j, "unit_sym", true, w);
    s.gamma_sym = get_or<bool>(j, "gamma_sym", true, w);
  } else if (kind == "combination") {
    check_keys(j, {"label", "kind", "terms"}, w);
    s.kind = PhiKind::combination;
    for (const auto& t : get<std::vector<json>>(j, "terms", w)) {
      check_keys(t, {"ref", "coeff"}, w + ".terms");
      s.terms.emplace_back(get<std::string>(t, "ref", w), get<std::int64_t>(t, "coeff", w));
    }
    if (s.terms.empty()) throw ConfigError(w + ": empty combination");
  } else {
    throw ConfigError(w + ": unknown kind '" + kind + "'");
  }
  return s;
}

}  // namespace

Config parse_config(const json& j) {
  check_keys(j, {"schema", "fields", "presets"}, "config");
  Config c;
  c.schema = get<int>(j, "schema", "config");
  if (c.schema != 1) throw ConfigError("config: unsupported schema " + std::to_string(c.schema));
  const json fields = get<json>(j, "fields", "config");
  if (!fields.is_object()) throw ConfigError("config.fields: expected an object");
  for (const auto& [name, f] : fields.items()) {
    const std::string w = "fields." + name;
    check_keys(f, {"min_poly", "disc", "units"}, w);
    FieldSpec fs;
    fs.name = name;
    fs.min_poly = get<Coords>(f, "min_poly", w);
    fs.disc = BigInt(get<std::int64_t>(f, "disc", w));
    fs.units = get_or<std::vector<Coords>>(f, "units", {}, w);
    if (fs.min_poly.size() < 2 || fs.min_poly.back() != 1) throw ConfigError(w + ": min_poly must be monic of degree >= 1");
    for (const auto& u : fs.units)
      if (u.size() + 1 != fs.min_poly.size()) throw ConfigError(w + ": unit has the wrong number of coordinates");
    c.fields[name] = fs;
  }
  const json presets = get<json>(j, "presets", "config");
  if (!presets.is_object()) throw ConfigError("config.presets: expected an object");
  for (const auto& [name, p] : presets.items()) {
    const std::string w = "presets." + name;
    check_keys(p, {"base", "top", "p", "gamma", "embed", "level", "b", "bound", "weights", "xi_depth", "battery",
                   "negative_control", "cm", "classgroup"},
               w);
    PresetSpec ps;
    ps.name = name;
    ps.base = get<std::string>(p, "base", w);
    ps.top = get<std::string>(p, "top", w);
    for (const auto& f : {ps.base, ps.top})
      if (!c.fields.count(f)) throw ConfigError(w + ": unknown field '" + f + "'");
    ps.p = get<int>(p, "p", w);
    ps.gamma = get<Coords>(p, "gamma", w);
    ps.embed = get_or<std::vector<Coords>>(p, "embed", {}, w);
    ps.level = get<std::vector<Coords>>(p, "level", w);
    ps.b = get_or<std::vector<Coords>>(p, "b", {}, w);
    ps.bound = get_or<std::int64_t>(p, "bound", 30, w);
    ps.weights = get_or<std::vector<int>>(p, "weights", {1, 2}, w);
    ps.xi_depth = get_or<int>(p, "xi_depth", 6, w);
    std::set<std::string> labels;
    for (const auto& e : get_or<std::vector<json>>(p, "battery", {}, w)) {
      auto s = parse_phi(e, w + ".battery");
      if (s.kind == PhiKind::combination)
        for (const auto& [ref, coeff] : s.terms)
          if (!labels.count(ref)) throw ConfigError(w + ".battery[" + s.label + "]: unknown reference '" + ref + "'");
      if (!labels.insert(s.label).second) throw ConfigError(w + ".battery: duplicate label '" + s.label + "'");
      ps.battery.push_back(s);
    }
    if (p.contains("negative_control")) {
      ps.negative_control = parse_phi(p.at("negative_control"), w + ".negative_control");
      if (ps.negative_control->kind == PhiKind::combination)
        throw ConfigError(w + ".negative_control: combinations are not allowed");
    }
    if (p.contains("cm")) {
      const auto& cj = p.at("cm");
      check_keys(cj, {"d0", "n", "f"}, w + ".cm");
      CMSpec cs;
      cs.d0 = get<std::int64_t>(cj, "d0", w + ".cm");
      cs.n = get<std::vector<Coords>>(cj, "n", w + ".cm");
      cs.f = get<std::vector<Coords>>(cj, "f", w + ".cm");
      if (cs.d0 >= 0) throw ConfigError(w + ".cm: d0 must be negative");
      ps.cm = cs;
    }
    if (p.contains("classgroup")) {
      const auto& g = p.at("classgroup");
      check_keys(g, {"cap", "prime_bound", "max_ring"}, w + ".classgroup");
      ps.classgroup.cap = get_or<std::int64_t>(g, "cap", ps.classgroup.cap, w);
      ps.classgroup.prime_bound = get_or<std::int64_t>(g, "prime_bound", 0, w);
      ps.classgroup.max_ring = get_or<std::int64_t>(g, "max_ring", ps.classgroup.max_ring, w);
    }
    c.presets[name] = ps;
  }
  if (c.presets.empty()) throw ConfigError("config: no presets");
  return c;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(j);
}

Config default_config() { return parse_config(json::parse(embedded_presets_json())); }

namespace {

QVector to_qvec(const Coords& c, int n, const std::string& where) {
  if (static_cast<int>(c.size()) != n) throw ConfigError(where + ": expected " + std::to_string(n) + " coordinates");
  QVector v(n);
  for (int i = 0; i < n; ++i) v(i) = Rational(static_cast<long>(c[static_cast<std::size_t>(i)]));
  return v;
}

Ideal ideal_of(const FieldOrder& K, const std::vector<Coords>& gens, const std::string& where) {
  if (gens.empty()) return unit_ideal(K);
  std::vector<QVector> g;
  for (const auto& c : gens) g.push_back(to_qvec(c, K.n, where));
  return ideal_from_generators(K, g);
}

}  // namespace

OrderPtr build_field(const FieldSpec& fs) {
  auto K = std::make_shared<FieldOrder>(order_from_min_poly(fs.name, fs.min_poly));
  if (abs(K->discriminant) != abs(fs.disc))
    throw ConfigError("fields." + fs.name + ": discriminant " + K->discriminant.get_str() + " differs from the declared " +
                      fs.disc.get_str());
  return K;
}

LoadedPreset load_preset(const Config& c, const std::string& name) {
  auto it = c.presets.find(name);
  if (it == c.presets.end()) throw ConfigError("unknown preset '" + name + "'");
  LoadedPreset lp;
  lp.spec = it->second;
  const auto& ps = lp.spec;
  const std::string w = "presets." + name;
  const auto& fb = c.fields.at(ps.base);
  const auto& ft = c.fields.at(ps.top);
  lp.base = build_field(fb);
  lp.top = build_field(ft);
  auto units = [&](const FieldSpec& fs, const FieldOrder& K) {
    std::vector<QVector> us;
    for (const auto& u : fs.units) us.push_back(to_qvec(u, K.n, "fields." + fs.name));
    try {
      return units_from_preset(K, us);
    } catch (const MathError& e) {
      throw ConfigError("fields." + fs.name + ": " + e.what());
    }
  };
  auto Ub = units(fb, *lp.base), Ut = units(ft, *lp.top);
  std::vector<QVector> emb;
  for (const auto& e : ps.embed) emb.push_back(to_qvec(e, lp.top->n, w + ".embed"));
  try {
    lp.tower = make_tower(name, lp.base, lp.top, ps.p, to_qvec(ps.gamma, lp.top->n, w + ".gamma"), emb, Ub, Ut,
                          ps.xi_depth);
  } catch (const MathError& e) {
    throw ConfigError(w + ": " + e.what());
  }
  lp.level = ideal_of(*lp.base, ps.level, w + ".level");
  lp.b = ideal_of(*lp.base, ps.b, w + ".b");
  lp.ver = residue_ver(lp.tower, lp.level);
  lp.top_units = unit_residues(*lp.ver.top, Ut);
  if (ps.cm) {
    try {
      lp.cm = make_cm(fb.name + "(sqrt" + std::to_string(ps.cm->d0) + ")", lp.base, ps.cm->d0, Ub);
      lp.cm2 = make_cm(ft.name + "(sqrt" + std::to_string(ps.cm->d0) + ")", lp.top, ps.cm->d0, Ut);
    } catch (const MathError& e) {
      throw ConfigError(w + ".cm: " + e.what());
    }
    lp.n = ideal_of(*lp.base, ps.cm->n, w + ".cm.n");
    lp.f = ideal_of(*lp.cm->order, ps.cm->f, w + ".cm.f");
  }
  return lp;
}

LocConstFn build_phi(const LoadedPreset& lp, const PhiSpec& s, int k, const std::map<std::string, LocConstFn>& earlier) {
  const auto& R = lp.ver.top;
  const FieldOrder& T = *lp.top;
  switch (s.kind) {
    case PhiKind::norm_char: {
      LocConstFn phi(R, k, s.label);
      phi.set_support_flags(true, true);
      NormCharTerm t;
      t.M = s.M;
      t.chi_x = k % 2 ? s.chi_x_odd : s.chi_x_even;
      t.chi_y = s.chi_y;
      t.coeff = BigInt(static_cast<long>(s.coeff));
      phi.add_term(t);
      return make_locfun(phi, lp.top_units);
    }
    case PhiKind::symmetrized: {
      std::optional<LocConstFn> seed;
      for (const auto& [x, y] : s.seeds) {
        auto ix = R->index(to_int(to_qvec(x, T.n, s.label)));
        auto iy = R->index(to_int(to_qvec(y, T.n, s.label)));
        auto one = indicator_fn(R, k, ix, iy);
        seed = seed ? *seed + one : one;
      }
      LocConstFn phi = s.unit_sym ? unit_symmetrize(*seed, lp.top_units) : *seed;
      if (s.gamma_sym) phi = gamma_symmetrize(phi, lp.tower);
      phi.set_label(s.label);
      return phi;
    }
    case PhiKind::combination: {
      std::optional<LocConstFn> acc;
      for (const auto& [ref, c] : s.terms) {
        auto it = earlier.find(ref);
        if (it == earlier.end()) throw ConfigError(s.label + ": unknown reference '" + ref + "'");
        LocConstFn t = BigInt(static_cast<long>(c)) * it->second;
        acc = acc ? *acc + t : t;
      }
      acc->set_label(s.label);
      return *acc;
    }
  }
  throw ConfigError("unreachable phi kind");
}

std::vector<LocConstFn> build_battery(const LoadedPreset& lp, int k) {
  std::vector<LocConstFn> out;
  std::map<std::string, LocConstFn> seen;
  for (const auto& s : lp.spec.battery) {
    auto phi = build_phi(lp, s, k, seen);
    seen.emplace(s.label, phi);
    out.push_back(phi);
  }
  return out;
}

std::optional<LocConstFn> build_negative_control(const LoadedPreset& lp, int k) {
  if (!lp.spec.negative_control) return std::nullopt;
  return build_phi(lp, *lp.spec.negative_control, k);
}

}  // namespace hmf
