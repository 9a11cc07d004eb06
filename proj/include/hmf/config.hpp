#pragma once

#include "hmf/classgroups.hpp"
#include "hmf/congruence.hpp"
#include "hmf/locfun.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hmf {

/// Malformed or inconsistent configuration (exit code 2 in the CLI).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Coords = std::vector<std::int64_t>;

struct FieldSpec {
  std::string name;
  Coords min_poly;  // constant term first, monic
  BigInt disc = 1;
  std::vector<Coords> units;
};

enum class PhiKind { norm_char, symmetrized, combination };

struct PhiSpec {
  std::string label;
  PhiKind kind = PhiKind::norm_char;
  // norm_char: chi_x depends on the parity of k
  std::int64_t M = 1;
  Coords chi_x_odd, chi_x_even, chi_y;
  std::int64_t coeff = 1;
  // symmetrized: indicator seeds (x, y) in top coordinates
  std::vector<std::pair<Coords, Coords>> seeds;
  bool unit_sym = true, gamma_sym = true;
  // combination of earlier battery entries
  std::vector<std::pair<std::string, std::int64_t>> terms;
};

struct CMSpec {
  std::int64_t d0 = -1;
  std::vector<Coords> n;  // base ideal generators
  std::vector<Coords> f;  // generators of an ideal of K = F(omega)
};

struct PresetSpec {
  std::string name, base, top;
  int p = 3;
  Coords gamma;               // gamma(top generator), top coordinates
  std::vector<Coords> embed;  // images of the base basis; empty when the base is Q
  std::vector<Coords> level;  // base ideal generators; the top level is its extension
  std::vector<Coords> b;      // cusp ideal generators (base)
  std::int64_t bound = 30;
  std::vector<int> weights{1, 2};
  int xi_depth = 6;
  std::vector<PhiSpec> battery;
  std::optional<PhiSpec> negative_control;
  std::optional<CMSpec> cm;
  ClassGroupOptions classgroup;
};

struct Config {
  int schema = 1;
  std::map<std::string, FieldSpec> fields;
  std::map<std::string, PresetSpec> presets;
};

/// Strict parse: unknown keys, wrong types and dangling references throw ConfigError.
Config parse_config(const nlohmann::json& j);
Config load_config_file(const std::string& path);
/// The catalogue compiled into the library.
const char* embedded_presets_json();
Config default_config();

struct LoadedPreset {
  PresetSpec spec;
  OrderPtr base, top;
  TowerData tower;
  Ideal level, b;
  VerMap ver;
  UnitResidues top_units;
  std::optional<CMQuadExt> cm, cm2;
  Ideal n, f;
};

OrderPtr build_field(const FieldSpec& fs);
LoadedPreset load_preset(const Config& c, const std::string& name);

LocConstFn build_phi(const LoadedPreset& lp, const PhiSpec& s, int k,
                     const std::map<std::string, LocConstFn>& earlier = {});
std::vector<LocConstFn> build_battery(const LoadedPreset& lp, int k);
std::optional<LocConstFn> build_negative_control(const LoadedPreset& lp, int k);

}  // namespace hmf
