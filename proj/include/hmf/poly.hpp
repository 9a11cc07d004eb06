#pragma once

#include "hmf/arith.hpp"

#include <vector>

namespace hmf {

/// Dense univariate polynomial over Q, coefficient i multiplies x^i.
/// The zero polynomial has no coefficients.
struct QPoly {
  std::vector<Rational> c;

  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);
  static QPoly from_ints(const std::vector<std::int64_t>& coeffs);
  static QPoly monomial(int deg, Rational coef = 1);

  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c.empty(); }
  const Rational& lead() const { return c.back(); }
  Rational eval(const Rational& x) const;
  double eval(double x) const;
  void trim();
};

QPoly operator+(const QPoly& a, const QPoly& b);
QPoly operator-(const QPoly& a, const QPoly& b);
QPoly operator*(const QPoly& a, const QPoly& b);
QPoly operator*(const Rational& s, const QPoly& a);
bool operator==(const QPoly& a, const QPoly& b);
void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly derivative(const QPoly& a);
QPoly gcd(QPoly a, QPoly b);  // monic
QPoly squarefree_part(const QPoly& a);

/// Characteristic polynomial det(xI - M) by Faddeev-LeVerrier.
QPoly charpoly(const QMatrix& m);

/// Sturm sequence of a squarefree polynomial.
std::vector<QPoly> sturm_sequence(const QPoly& p);
/// Number of distinct real roots in the half-open interval (lo, hi].
int sturm_count(const std::vector<QPoly>& seq, const Rational& lo, const Rational& hi);
/// Number of distinct real roots in (lo, +inf).
int sturm_count_above(const std::vector<QPoly>& seq, const Rational& lo);
int sturm_count_all(const std::vector<QPoly>& seq);

/// Isolating intervals [lo, hi] of the real roots of a squarefree polynomial,
/// each refined to width <= 2^-bits, sorted by decreasing root.
struct RootInterval {
  Rational lo, hi;
};
std::vector<RootInterval> real_roots(const QPoly& p, int bits);
/// Halve an isolating interval of a root of p until width <= 2^-bits.
void refine_root(const QPoly& p, RootInterval& r, int bits);

/// Polynomials over F_l (l prime), coefficient i multiplies x^i, trimmed.
using FpPoly = std::vector<std::int64_t>;
FpPoly fp_reduce(const QPoly& p, std::int64_t l);  // p must be l-integral
void fp_trim(FpPoly& a);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::int64_t l);
void fp_divmod(const FpPoly& a, const FpPoly& b, std::int64_t l, FpPoly& q, FpPoly& r);
/// Factorisation into monic irreducibles with multiplicity, by trial division
/// over monic polynomials of increasing degree (desk-scale l and degree).
std::vector<std::pair<FpPoly, int>> fp_factor(FpPoly a, std::int64_t l);

}  // namespace hmf
