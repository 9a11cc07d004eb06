#pragma once

#include "hmf/cm.hpp"
#include "hmf/tower.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hmf {

enum class GroupStatus { exact, inconclusive };

struct FinAbGroup {
  std::vector<std::string> generators;
  ZMatrix relations;             // diagonal Smith form, one row per divisor
  std::vector<BigInt> divisors;  // d1 | d2 | ..., all > 1
  GroupStatus status = GroupStatus::exact;
  std::int64_t cap = 0;          // points per principality search
  std::string note;

  BigInt order() const;
  bool trivial() const { return divisors.empty(); }
  std::string to_string() const;  // "Z/2 x Z/4", "1", or "inconclusive(cap=...)"
};

struct ClassGroupOptions {
  std::int64_t cap = 10'000;     // lattice points per principality search
  std::int64_t prime_bound = 0;  // enumerate primes up to max(Minkowski, prime_bound)
  std::int64_t max_ring = 20'000'000;  // largest residue ring O/J handled
};

std::int64_t minkowski_bound(const FieldOrder& K);

FinAbGroup class_group(const FieldOrder& K, const UnitGroupData& U, const ClassGroupOptions& opt = {});
FinAbGroup class_group(const CMQuadExt& cm, const ClassGroupOptions& opt = {});
/// Totally real orders: ideals modulo totally positive principal ideals.
FinAbGroup narrow_class_group(const FieldOrder& K, const UnitGroupData& U, const ClassGroupOptions& opt = {});

/// Cl_K(J) modulo the image of (r/j)^x, with J = j O_K for an integral ideal
/// j of the base.
FinAbGroup ray_class_minus(const CMQuadExt& cm, const Ideal& j_base, const ClassGroupOptions& opt = {});

/// |Cl_K| * |(O_K/J)^x| / |<unit residues, base residues>|, when the class
/// group is exact.
std::optional<BigInt> ray_minus_order_formula(const CMQuadExt& cm, const Ideal& j_base,
                                              const ClassGroupOptions& opt = {});

/// j: the largest divisor of (n f) O_K /\ F built from base primes that are
/// inert or ramified in K. n is a base ideal, f an ideal of K.
Ideal j_ideal(const CMQuadExt& cm, const Ideal& n, const Ideal& f);

/// Image of an element of K = F(omega) in K' = F'(omega).
QVector cm_tower_embed(const CMQuadExt& cm, const CMQuadExt& cm2, const TowerData& t, const QVector& x);

/// Whether the rational prime p splits in Q(sqrt(d0)).
bool splits_in_quadratic(std::int64_t d0, std::int64_t p);

enum class Hypothesis { holds, fails, inconclusive };
std::string to_string(Hypothesis h);

struct AssumptionReport {
  Hypothesis h1 = Hypothesis::inconclusive, h2 = Hypothesis::inconclusive, h3 = Hypothesis::inconclusive;
  Ideal j;
  FinAbGroup cl_base, cl_top;            // Cl_F(1), Cl_F'(1)
  FinAbGroup minus_base, minus_top;      // Cl-_K(J), Cl-_K'(J)
  BigInt image_order = 0, fixed_order = 0;
  bool generators_fixed = false;         // every generator image is Gamma-fixed
  bool p_splits_in_k0 = false;
  bool ramified_split_in_k = false;
  std::vector<std::string> notes;
  bool side_conditions() const { return p_splits_in_k0 && ramified_split_in_k; }
};

/// cm: K over t.base, cm2: K' over t.top, same d0. n is a base ideal and f an
/// ideal of K.
AssumptionReport check_main_assumptions(const TowerData& t, const CMQuadExt& cm, const CMQuadExt& cm2,
                                        const Ideal& n, const Ideal& f, const ClassGroupOptions& opt = {});

}  // namespace hmf
