#pragma once

#include "hmf/field.hpp"

#include <string>
#include <vector>

namespace hmf {

/// Fractional ideal I = (1/denom) * hnf * Z^n. The pair is canonical: hnf is
/// in column Hermite normal form and denom is the least positive integer
/// making denom*I integral, so equal ideals compare equal structurally.
struct Ideal {
  ZMatrix hnf;
  BigInt denom = 1;

  bool operator==(const Ideal& o) const { return denom == o.denom && hnf == o.hnf; }
  bool operator!=(const Ideal& o) const { return !(*this == o); }
};

Ideal unit_ideal(const FieldOrder& K);
Ideal principal_ideal(const FieldOrder& K, const QVector& x);
/// O-module generated by the elements.
Ideal ideal_from_generators(const FieldOrder& K, const std::vector<QVector>& gens);
/// Canonicalize a Z-lattice given by rational basis columns (must already be
/// an O-module; check with is_module).
Ideal ideal_from_lattice(const QMatrix& basis);

QMatrix ideal_basis(const Ideal& I);  // rational basis columns
std::vector<QVector> ideal_basis_vectors(const Ideal& I);
bool is_integral(const Ideal& I);
bool is_module(const FieldOrder& K, const Ideal& I);

Ideal ideal_mul(const FieldOrder& K, const Ideal& a, const Ideal& b);
Ideal ideal_add(const FieldOrder& K, const Ideal& a, const Ideal& b);
Ideal ideal_inverse(const FieldOrder& K, const Ideal& a);
Ideal ideal_intersect(const FieldOrder& K, const Ideal& a, const Ideal& b);
Ideal ideal_pow(const FieldOrder& K, const Ideal& a, int e);
Ideal ideal_scale(const Ideal& a, const Rational& s);
bool ideal_contains(const Ideal& I, const QVector& x);
bool ideal_contains(const Ideal& I, const IVector& x);
bool ideal_subset(const Ideal& a, const Ideal& b);  // a inside b
Rational ideal_norm(const Ideal& I);
/// Coordinates of x in the ideal's HNF basis (integral iff x in I).
QVector ideal_coords(const Ideal& I, const QVector& x);

/// Inverse of the trace dual of the order.
Ideal different(const FieldOrder& K);

struct PrimeIdeal {
  Ideal ideal;
  std::int64_t p = 0;
  int e = 1;  // ramification index
  int f = 1;  // residue degree
  QVector gen2;  // ideal = (p, gen2)
  std::string label;
};

/// Primes above l by Kummer-Dedekind applied to the order's generator.
/// Throws MathError when l divides the index [O : Z[generator]].
std::vector<PrimeIdeal> primes_above(const FieldOrder& K, std::int64_t l);

/// v_P(I) for a fractional ideal I.
int valuation(const FieldOrder& K, const PrimeIdeal& P, const Ideal& I);
int valuation(const FieldOrder& K, const PrimeIdeal& P, const QVector& x);

std::string format_ideal(const Ideal& I);

}  // namespace hmf
