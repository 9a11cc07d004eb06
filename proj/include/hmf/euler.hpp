#pragma once

#include "hmf/arith.hpp"

#include <map>
#include <string>
#include <utility>

namespace hmf {

/// Laurent polynomial in X and N over Q, keyed by (deg_X, deg_N).
struct LaurentXN {
  std::map<std::pair<int, int>, Rational> terms;

  static LaurentXN monomial(const Rational& c, int x, int n);
  bool is_zero() const { return terms.empty(); }
  std::string to_string() const;
  friend LaurentXN operator+(const LaurentXN& a, const LaurentXN& b);
  friend LaurentXN operator-(const LaurentXN& a, const LaurentXN& b);
  friend LaurentXN operator*(const LaurentXN& a, const LaurentXN& b);
  friend bool operator==(const LaurentXN& a, const LaurentXN& b) { return a.terms == b.terms; }
};

/// Laurent series in t with LaurentXN coefficients, known modulo t^(precision+1).
class RationalFunctionSeries {
 public:
  RationalFunctionSeries() = default;
  explicit RationalFunctionSeries(int precision) : prec_(precision) {}
  static RationalFunctionSeries monomial(const LaurentXN& c, int t_exp, int precision);
  /// (1 - c t^k)^-1 for k >= 1, through t^precision.
  static RationalFunctionSeries geometric(const LaurentXN& c, int k, int precision);

  int precision() const { return prec_; }
  int valuation() const;  // of the known part; precision + 1 when zero
  LaurentXN coeff(int t_exp) const;  // throws beyond the precision
  void set(int t_exp, const LaurentXN& c);
  const std::map<int, LaurentXN>& coeffs() const { return c_; }
  RationalFunctionSeries truncated(int precision) const;

  friend RationalFunctionSeries operator+(const RationalFunctionSeries& a, const RationalFunctionSeries& b);
  friend RationalFunctionSeries operator-(const RationalFunctionSeries& a, const RationalFunctionSeries& b);
  friend RationalFunctionSeries operator*(const RationalFunctionSeries& a, const RationalFunctionSeries& b);

 private:
  int prec_ = 0;
  std::map<int, LaurentXN> c_;  // no zero entries, keys <= prec_
};

/// sum_{n = -1-e}^{T} X^n t^n w(n) with w(-1-e) = -1/N and w(n) = 1 - 1/N otherwise.
RationalFunctionSeries euler_inner_sum(int e, int T);

enum class EulerForm {
  inverse_t,  // (1 - t^-1 X^-1 N^-1) X^-e t^-e (1 - X t)^-1
  direct_t    // (1 - t X^-1 N^-1) X^-e t^-e (1 - X t)^-1
};
RationalFunctionSeries euler_closed_form(int e, int T, EulerForm form);

struct EulerIdentityReport {
  int e = 0, T = 0;
  bool holds = false;
  int first_mismatch = 0;  // t-exponent, when !holds
};
/// Requires T >= e + 2.
EulerIdentityReport verify_euler_identity(int e, int T, EulerForm form = EulerForm::inverse_t);

}  // namespace hmf
