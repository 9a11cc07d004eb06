#pragma once

#include "hmf/arith.hpp"

namespace hmf {

/// Closed interval with exact rational endpoints.
struct Interval {
  Rational lo, hi;

  Interval() = default;
  Interval(Rational a) : lo(a), hi(a) {}
  Interval(Rational a, Rational b) : lo(std::move(a)), hi(std::move(b)) {}

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool positive() const { return lo > 0; }
  bool negative() const { return hi < 0; }
  /// +1 / -1 when certified, 0 when the interval straddles zero.
  int certified_sign() const { return positive() ? 1 : (negative() ? -1 : 0); }
  Rational width() const { return hi - lo; }
  double mid_d() const { return Rational((lo + hi) / 2).get_d(); }
};

inline Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

inline Interval operator*(const Interval& a, const Interval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  Rational mn = p[0], mx = p[0];
  for (int i = 1; i < 4; ++i) {
    if (p[i] < mn) mn = p[i];
    if (p[i] > mx) mx = p[i];
  }
  return {mn, mx};
}

inline Interval operator*(const Rational& s, const Interval& a) {
  return s >= 0 ? Interval(s * a.lo, s * a.hi) : Interval(s * a.hi, s * a.lo);
}

}  // namespace hmf
