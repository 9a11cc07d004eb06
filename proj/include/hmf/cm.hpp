#pragma once

#include "hmf/ideal.hpp"
#include "hmf/units.hpp"

#include <memory>
#include <string>
#include <vector>

namespace hmf {

/// K = F(sqrt(d0)) with d0 < 0 a squarefree rational integer, so K = F K0 for
/// the imaginary quadratic K0 = Q(sqrt(d0)). Only the disjoint-ramification
/// case is accepted, where O_K = O_F[omega] with omega the generator of O_K0.
/// Absolute basis: e_0..e_{n-1}, e_0 omega..e_{n-1} omega.
struct CMQuadExt {
  std::string label;
  OrderPtr base;
  std::int64_t d0 = -1;
  std::int64_t omega_trace = 0;  // omega^2 = t*omega - s
  std::int64_t omega_norm = 0;
  OrderPtr order;                // absolute order of degree 2n
  IMatrix conj;                  // complex conjugation on the absolute basis
  QMatrix t2_gram;               // Tr(b_i * conj(b_j)), positive definite
  std::vector<QVector> torsion;  // roots of unity
  std::vector<QVector> unit_gens;  // generators of O_K^x modulo the base units
  UnitGroupData base_units;
};

CMQuadExt make_cm(const std::string& label, OrderPtr base, std::int64_t d0, UnitGroupData base_units);

/// Discriminant of Q(sqrt(d0)).
std::int64_t quadratic_discriminant(std::int64_t d0);

QVector cm_embed_base(const CMQuadExt& cm, const QVector& x);
QVector cm_conj(const CMQuadExt& cm, const QVector& x);
QVector cm_sqrt_d0(const CMQuadExt& cm);  // coordinates of sqrt(d0)
Ideal cm_extend(const CMQuadExt& cm, const Ideal& I);
/// Lift an automorphism of the base (matrix on the base basis) to K fixing omega.
IMatrix cm_lift_automorphism(const CMQuadExt& cm, const IMatrix& base_aut);
Ideal apply_automorphism(const FieldOrder& K, const IMatrix& aut, const Ideal& I);

/// Primes of K above l via Kummer-Dedekind relative to the base primes.
std::vector<PrimeIdeal> cm_primes_above(const CMQuadExt& cm, std::int64_t l);

/// Ball radius (in Tr(x conj x)) meeting every orbit under base units of
/// elements of absolute norm `abs_norm`.
Rational cm_orbit_ball(const CMQuadExt& cm, const Rational& abs_norm);

/// Minkowski bound (rounded up) for K.
std::int64_t cm_minkowski_bound(const CMQuadExt& cm);

}  // namespace hmf
