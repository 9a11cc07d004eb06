#pragma once

#include "hmf/eisenstein.hpp"
#include "hmf/tower.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hmf {

/// q^a -> q^{Tr_{F'/F}(a)}; requires e.trace_bound >= trace_bound.
QExpansion restrict_diagonal(const QExpansion& e, const TowerData& t, const Rational& trace_bound);
/// q^a -> q^{p a}.
QExpansion frobenius_twist(const QExpansion& e, std::int64_t p);

std::uint64_t expansion_hash(const QExpansion& e);

/// Gamma-orbit decomposition of the triples (xi', a, b) with Tr xi' = xi,
/// a in O', b in bO' and ab = xi'. Independent of phi'.
struct Triple {
  QVector xi_top, a, b;
  std::size_t orbit = 0;
};
struct GammaOrbit {
  std::vector<std::size_t> members;  // triple indices in gamma order
  bool fixed = false;
};
struct OrbitStructure {
  QVector xi;
  std::vector<Triple> triples;
  std::vector<GammaOrbit> orbits;
  std::vector<std::string> errors;  // orbit sizes other than 1 or p
};

/// Fiber of the relative trace over xi inside bO' (totally positive elements).
std::vector<QVector> trace_fiber(const TowerData& t, const QVector& xi, const Ideal& b_top);
OrbitStructure orbit_structure(const TowerData& t, const QVector& xi, const Ideal& b, const DivisorTable& top_table);

struct OrbitDiagnostics {
  QVector xi;
  std::map<std::size_t, std::size_t> size_counts;  // orbit size -> count
  bool sizes_ok = true;
  bool free_subtotals_vanish = true;
  bool fixed_exponents_in_pb = true;  // xi = p xi' with xi' in b
  bool fixed_descend = true;          // a, b are base elements up to units of O'
  bool fixed_match_base = true;       // same count as base factorizations of xi/p prime to the level
  std::size_t fixed_count = 0;  // fixed orbits with a, b prime to the level of phi'
  BigInt total = 0;        // a(xi, phi', k) recomputed from the orbits
  BigInt fixed_total = 0;  // contribution of the fixed triples
  std::vector<std::string> problems;
};

OrbitDiagnostics orbit_diagnostics(const OrbitStructure& s, const TowerData& t, const LocConstFn& phi_top, int k,
                                   const Ideal& b);
/// Convenience form building the divisor table on the fly.
OrbitDiagnostics orbit_diagnostics(const QVector& xi, const TowerData& t, const Ideal& b, const LocConstFn& phi_top,
                                   int k);

struct Mismatch {
  ExpKey exponent;
  BigInt lhs, rhs;  // reduced modulo the comparison modulus
};

struct CongruenceOptions {
  bool forced = false;        // run even when preconditions fail
  int modulus_power = 1;      // 2 gives the exploratory p^2 comparison
  bool orbit_check = false;   // run orbit diagnostics on every exponent
};

struct CongruenceReport {
  std::string preset, phi_label;
  int k = 0;
  int p = 0;
  Rational bound = 0;
  BigInt modulus = 0;
  bool gamma_invariant = false;
  bool units_supported = false;
  bool b_prime_to_p = false;
  bool xi_verified = false;
  bool refused = false;
  std::vector<std::string> precondition_failures;
  std::uint64_t lhs_hash = 0, rhs_hash = 0;
  std::vector<Mismatch> mismatches;
  std::size_t exponents_compared = 0;
  // aggregated orbit statistics (when orbit_check is set)
  std::map<std::size_t, std::size_t> orbit_sizes;
  bool orbits_ok = true;
  std::vector<std::string> orbit_problems;
  QExpansion lhs, rhs;
};

/// res(E_k(phi', c theta_{F'/F})) against Frob_p(E_pk(phi' o ver, c)) at the
/// cusp (O, b). `ver` maps the base residues into phi's ring.
CongruenceReport check_congruence(const LocConstFn& phi_top, const TowerData& t, const VerMap& ver, const Ideal& b,
                                  int k, const Rational& bound, const CongruenceOptions& opt = {},
                                  const std::string& preset = "");

}  // namespace hmf
