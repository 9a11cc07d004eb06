#pragma once
// Small helpers shared by the test executables.
#include "hmf/config.hpp"

#include <random>

namespace hmf::testing {

inline QVector qv(std::initializer_list<long> xs) {
  QVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (long x : xs) v(i++) = Rational(x);
  return v;
}

inline QVector random_element(std::mt19937_64& rng, int n, long range) {
  std::uniform_int_distribution<long> d(-range, range);
  QVector v(n);
  for (int i = 0; i < n; ++i) v(i) = Rational(d(rng));
  return v;
}

inline OrderPtr field(const std::string& name) {
  static const Config cfg = default_config();
  return build_field(cfg.fields.at(name));
}

inline UnitGroupData field_units(const std::string& name) {
  static const Config cfg = default_config();
  const auto& fs = cfg.fields.at(name);
  auto K = build_field(fs);
  std::vector<QVector> us;
  for (const auto& u : fs.units) {
    QVector v(K->n);
    for (int i = 0; i < K->n; ++i) v(i) = Rational(static_cast<long>(u[static_cast<std::size_t>(i)]));
    us.push_back(v);
  }
  return units_from_preset(*K, us);
}

inline const LoadedPreset& preset(const std::string& name) {
  static std::map<std::string, LoadedPreset> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, load_preset(default_config(), name)).first;
  return it->second;
}

}  // namespace hmf::testing
