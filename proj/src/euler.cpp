#include "hmf/euler.hpp"

#include <algorithm>
#include <sstream>

namespace hmf {

LaurentXN LaurentXN::monomial(const Rational& c, int x, int n) {
  LaurentXN r;
  if (c != 0) r.terms[{x, n}] = c;
  return r;
}

LaurentXN operator+(const LaurentXN& a, const LaurentXN& b) {
  LaurentXN r = a;
  for (const auto& [k, v] : b.terms) {
    Rational s = r.terms[k] + v;
    if (s == 0)
      r.terms.erase(k);
    else
      r.terms[k] = s;
  }
  return r;
}

LaurentXN operator-(const LaurentXN& a, const LaurentXN& b) {
  LaurentXN nb;
  for (const auto& [k, v] : b.terms) nb.terms[k] = -v;
  return a + nb;
}

LaurentXN operator*(const LaurentXN& a, const LaurentXN& b) {
  LaurentXN r;
  for (const auto& [ka, va] : a.terms)
    for (const auto& [kb, vb] : b.terms) r = r + LaurentXN::monomial(va * vb, ka.first + kb.first, ka.second + kb.second);
  return r;
}

std::string LaurentXN::to_string() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : terms) {
    if (!first) os << " + ";
    first = false;
    os << hmf::to_string(v);
    if (k.first) os << "*X^" << k.first;
    if (k.second) os << "*N^" << k.second;
  }
  return os.str();
}

RationalFunctionSeries RationalFunctionSeries::monomial(const LaurentXN& c, int t_exp, int precision) {
  RationalFunctionSeries s(precision);
  if (t_exp <= precision) s.set(t_exp, c);
  return s;
}

RationalFunctionSeries RationalFunctionSeries::geometric(const LaurentXN& c, int k, int precision) {
  if (k < 1) throw MathError("geometric: t-exponent must be positive");
  RationalFunctionSeries s(precision);
  LaurentXN pw = LaurentXN::monomial(1, 0, 0);
  for (int j = 0; j * k <= precision; ++j) {
    s.set(j * k, pw);
    pw = pw * c;
  }
  return s;
}

int RationalFunctionSeries::valuation() const { return c_.empty() ? prec_ + 1 : c_.begin()->first; }

LaurentXN RationalFunctionSeries::coeff(int t_exp) const {
  if (t_exp > prec_)
    throw MathError("series coefficient t^" + std::to_string(t_exp) + " beyond precision " + std::to_string(prec_));
  auto it = c_.find(t_exp);
  return it == c_.end() ? LaurentXN{} : it->second;
}

void RationalFunctionSeries::set(int t_exp, const LaurentXN& c) {
  if (t_exp > prec_) throw MathError("series: write beyond precision");
  if (c.is_zero())
    c_.erase(t_exp);
  else
    c_[t_exp] = c;
}

RationalFunctionSeries RationalFunctionSeries::truncated(int precision) const {
  if (precision > prec_) throw MathError("series: cannot raise precision by truncation");
  RationalFunctionSeries s(precision);
  for (const auto& [k, v] : c_)
    if (k <= precision) s.c_[k] = v;
  return s;
}

RationalFunctionSeries operator+(const RationalFunctionSeries& a, const RationalFunctionSeries& b) {
  const int p = std::min(a.prec_, b.prec_);
  RationalFunctionSeries r = a.truncated(p);
  for (const auto& [k, v] : b.c_)
    if (k <= p) r.set(k, r.coeff(k) + v);
  return r;
}

RationalFunctionSeries operator-(const RationalFunctionSeries& a, const RationalFunctionSeries& b) {
  RationalFunctionSeries nb(b.prec_);
  for (const auto& [k, v] : b.c_) nb.c_[k] = LaurentXN{} - v;
  return a + nb;
}

RationalFunctionSeries operator*(const RationalFunctionSeries& a, const RationalFunctionSeries& b) {
  const int p = std::min(a.prec_ + b.valuation(), b.prec_ + a.valuation());
  RationalFunctionSeries r(p);
  for (const auto& [ka, va] : a.c_)
    for (const auto& [kb, vb] : b.c_)
      if (ka + kb <= p) r.set(ka + kb, r.coeff(ka + kb) + va * vb);
  return r;
}

RationalFunctionSeries euler_inner_sum(int e, int T) {
  if (e < 0) throw MathError("euler_inner_sum: e must be nonnegative");
  RationalFunctionSeries s(T);
  const LaurentXN w = LaurentXN::monomial(1, 0, 0) - LaurentXN::monomial(1, 0, -1);
  for (int n = -1 - e; n <= T; ++n) {
    LaurentXN c = n == -1 - e ? LaurentXN::monomial(-1, n, -1) : LaurentXN::monomial(1, n, 0) * w;
    s.set(n, c);
  }
  return s;
}

RationalFunctionSeries euler_closed_form(int e, int T, EulerForm form) {
  // enough terms of the geometric series to know the product through t^T
  const int P = T + e + 1;
  auto geo = RationalFunctionSeries::geometric(LaurentXN::monomial(1, 1, 0), 1, P);
  auto shift = RationalFunctionSeries::monomial(LaurentXN::monomial(1, -e, 0), -e, P);
  const int te = form == EulerForm::inverse_t ? -1 : 1;
  auto first = RationalFunctionSeries::monomial(LaurentXN::monomial(1, 0, 0), 0, P) -
               RationalFunctionSeries::monomial(LaurentXN::monomial(1, -1, -1), te, P);
  return (first * shift * geo).truncated(T);
}

EulerIdentityReport verify_euler_identity(int e, int T, EulerForm form) {
  if (T < e + 2) throw MathError("verify_euler_identity: truncation " + std::to_string(T) + " too small for e = " +
                                 std::to_string(e));
  EulerIdentityReport r;
  r.e = e;
  r.T = T;
  auto lhs = euler_inner_sum(e, T), rhs = euler_closed_form(e, T, form);
  r.holds = true;
  for (int n = -1 - e - 1; n <= T; ++n)
    if (!(lhs.coeff(n) == rhs.coeff(n))) {
      r.holds = false;
      r.first_mismatch = n;
      break;
    }
  return r;
}

}  // namespace hmf
