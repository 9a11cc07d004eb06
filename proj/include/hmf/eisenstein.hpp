#pragma once

#include "hmf/locfun.hpp"
#include "hmf/units.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace hmf {

/// Exponent key ordered canonically: trace, then coordinates.
struct ExpKey {
  Rational trace;
  std::vector<Rational> coords;
  QVector vec() const;
  friend bool operator<(const ExpKey& a, const ExpKey& b);
  friend bool operator==(const ExpKey& a, const ExpKey& b) { return a.trace == b.trace && a.coords == b.coords; }
};
ExpKey exp_key(const FieldOrder& K, const QVector& x);

struct QExpansion {
  std::string field;
  int degree = 1;
  Ideal exponent_ideal;
  std::map<ExpKey, BigInt> coeffs;  // no zero entries
  Rational trace_bound = 0;
  int k = 0;
  std::string level;
  std::string phi;

  BigInt at(const ExpKey& e) const;
  void set(const ExpKey& e, const BigInt& v);
  friend bool operator==(const QExpansion& a, const QExpansion& b);
};

void write_qexpansion(std::ostream& os, const QExpansion& e);
QExpansion read_qexpansion(std::istream& is);

/// Orbit representatives under the units of elements of A with |N| up to a
/// bound, grouped by the principal ideal they generate. Representative of an
/// orbit: least T2, then largest trace, then lexicographically smallest.
class DivisorTable {
 public:
  DivisorTable(const FieldOrder& K, const Ideal& A, const UnitGroupData& U, const BigInt& max_norm);
  const std::vector<QVector>& reps(const BigInt& abs_norm) const;
  const BigInt& max_norm() const { return max_norm_; }
  const Ideal& ideal() const { return A_; }
  std::size_t orbit_count() const;
  std::int64_t points_scanned() const { return points_; }

 private:
  Ideal A_;
  BigInt max_norm_;
  std::map<BigInt, std::vector<QVector>> by_norm_;
  std::int64_t points_ = 0;
};

using Factorization = std::pair<QVector, QVector>;

/// One representative (a, b) per unit orbit with a in A, b in B, ab = xi.
std::vector<Factorization> factorization_orbits(const FieldOrder& K, const QVector& xi, const Ideal& A, const Ideal& B,
                                                const DivisorTable& table);
std::vector<Factorization> factorization_orbits(const FieldOrder& K, const QVector& xi, const Ideal& A, const Ideal& B,
                                                const UnitGroupData& U);

/// sgn(N a) N(a)^(k-1), exact.
BigInt norm_power_term(const FieldOrder& K, const QVector& a, int k);

/// Check the weight hypotheses: k >= 1, and phi(a, 0) = 0 when k = 1.
void require_weight_hypothesis(const LocConstFn& phi, int k);
bool units_supported_x(const LocConstFn& phi);

/// N(A) * sum over orbits of phi(a, b) sgn(N a) N(a)^(k-1).
BigInt coefficient(const FieldOrder& K, const std::vector<Factorization>& orbits, const Ideal& A, const LocConstFn& phi,
                   int k);
BigInt coefficient(const FieldOrder& K, const QVector& xi, const Ideal& A, const Ideal& B, const LocConstFn& phi, int k,
                   const UnitGroupData& U);

struct ExpandOptions {
  /// Skip the units-support requirement (constant term is simply dropped).
  bool sanity = false;
  std::string level_label;
};

QExpansion expand(const FieldOrder& K, const Ideal& A, const Ideal& B, const LocConstFn& phi, int k,
                  const Rational& trace_bound, const UnitGroupData& U, const ExpandOptions& opt = {});

}  // namespace hmf
