#include "hmf/poly.hpp"

#include <algorithm>

namespace hmf {

QPoly::QPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }

QPoly QPoly::from_ints(const std::vector<std::int64_t>& coeffs) {
  std::vector<Rational> v;
  v.reserve(coeffs.size());
  for (auto x : coeffs) v.emplace_back(static_cast<long>(x));
  return QPoly(std::move(v));
}

QPoly QPoly::monomial(int deg, Rational coef) {
  std::vector<Rational> v(deg + 1, Rational(0));
  v[deg] = coef;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Rational QPoly::eval(const Rational& x) const {
  Rational r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

double QPoly::eval(double x) const {
  double r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + it->get_d();
  return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rational> r(std::max(a.c.size(), b.c.size()), Rational(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
  return QPoly(std::move(r));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  std::vector<Rational> r(std::max(a.c.size(), b.c.size()), Rational(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
  return QPoly(std::move(r));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  std::vector<Rational> r(a.c.size() + b.c.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  return QPoly(std::move(r));
}

QPoly operator*(const Rational& s, const QPoly& a) {
  std::vector<Rational> r = a.c;
  for (auto& x : r) x *= s;
  return QPoly(std::move(r));
}

bool operator==(const QPoly& a, const QPoly& b) { return a.c == b.c; }

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  if (b.is_zero()) throw MathError("polynomial division by zero");
  r = a;
  q = QPoly();
  if (a.degree() < b.degree()) return;
  std::vector<Rational> qc(a.degree() - b.degree() + 1, Rational(0));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int d = r.degree() - b.degree();
    Rational f = r.lead() / b.lead();
    qc[d] = f;
    for (int i = 0; i <= b.degree(); ++i) r.c[i + d] -= f * b.c[i];
    r.trim();
  }
  q = QPoly(std::move(qc));
}

QPoly derivative(const QPoly& a) {
  if (a.c.size() <= 1) return QPoly();
  std::vector<Rational> r(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i) r[i - 1] = a.c[i] * static_cast<long>(i);
  return QPoly(std::move(r));
}

QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return Rational(1) / a.lead() * a;
}

QPoly squarefree_part(const QPoly& a) {
  QPoly g = gcd(a, derivative(a));
  QPoly q, r;
  divmod(a, g, q, r);
  return q;
}

QPoly charpoly(const QMatrix& m) {
  const Eigen::Index n = m.rows();
  // c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k)/k
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  QMatrix mk = QMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    QMatrix next = m * mk;
    for (Eigen::Index i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = next;
    QMatrix am = m * mk;
    Rational tr = 0;
    for (Eigen::Index i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return QPoly(std::move(c));
}

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  std::vector<QPoly> seq{p, derivative(p)};
  while (!seq.back().is_zero()) {
    QPoly q, r;
    divmod(seq[seq.size() - 2], seq.back(), q, r);
    if (r.is_zero()) break;
    seq.push_back(Rational(-1) * r);
  }
  return seq;
}

namespace {

int sign_changes(const std::vector<int>& s) {
  int changes = 0, prev = 0;
  for (int x : s) {
    if (x == 0) continue;
    if (prev != 0 && x != prev) ++changes;
    prev = x;
  }
  return changes;
}

int variations_at(const std::vector<QPoly>& seq, const Rational& x) {
  std::vector<int> s;
  s.reserve(seq.size());
  for (const auto& p : seq) s.push_back(sgn(p.eval(x)));
  return sign_changes(s);
}

int variations_at_pos_inf(const std::vector<QPoly>& seq) {
  std::vector<int> s;
  for (const auto& p : seq) s.push_back(p.is_zero() ? 0 : sgn(p.lead()));
  return sign_changes(s);
}

int variations_at_neg_inf(const std::vector<QPoly>& seq) {
  std::vector<int> s;
  for (const auto& p : seq) {
    if (p.is_zero()) {
      s.push_back(0);
      continue;
    }
    int sg = sgn(p.lead());
    s.push_back(p.degree() % 2 == 0 ? sg : -sg);
  }
  return sign_changes(s);
}

// Cauchy bound: all roots lie in (-B, B).
Rational root_bound(const QPoly& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational v = abs(p.c[i] / p.lead());
    if (v > m) m = v;
  }
  return m + 1;
}

}  // namespace

int sturm_count(const std::vector<QPoly>& seq, const Rational& lo, const Rational& hi) {
  return variations_at(seq, lo) - variations_at(seq, hi);
}

int sturm_count_above(const std::vector<QPoly>& seq, const Rational& lo) {
  return variations_at(seq, lo) - variations_at_pos_inf(seq);
}

int sturm_count_all(const std::vector<QPoly>& seq) {
  return variations_at_neg_inf(seq) - variations_at_pos_inf(seq);
}

void refine_root(const QPoly& p, RootInterval& r, int bits) {
  Rational width;
  mpq_div_2exp(width.get_mpq_t(), Rational(1).get_mpq_t(), static_cast<unsigned long>(bits));
  int slo = sgn(p.eval(r.lo));
  if (slo == 0) {
    r.hi = r.lo;
    return;
  }
  while (r.hi - r.lo > width) {
    Rational mid = (r.lo + r.hi) / 2;
    int sm = sgn(p.eval(mid));
    if (sm == 0) {
      r.lo = r.hi = mid;
      return;
    }
    if (sm == slo)
      r.lo = mid;
    else
      r.hi = mid;
  }
}

std::vector<RootInterval> real_roots(const QPoly& p, int bits) {
  QPoly sq = squarefree_part(p);
  auto seq = sturm_sequence(sq);
  Rational b = root_bound(sq);
  std::vector<RootInterval> out;
  // bisection on (lo, hi] until each interval holds exactly one root
  std::vector<RootInterval> stack{{-b, b}};
  while (!stack.empty()) {
    RootInterval cur = stack.back();
    stack.pop_back();
    int cnt = sturm_count(seq, cur.lo, cur.hi);
    if (cnt == 0) continue;
    if (cnt == 1) {
      // shrink to a sign-change bracket [lo, hi]
      if (sq.eval(cur.hi) == 0) {
        out.push_back({cur.hi, cur.hi});
        continue;
      }
      while (sq.eval(cur.lo) == 0) {  // neighbouring root sits on the left end
        Rational mid = (cur.lo + cur.hi) / 2;
        if (sturm_count(seq, cur.lo, mid) == 1)
          cur.hi = mid;
        else
          cur.lo = mid;
      }
      if (sq.eval(cur.hi) == 0) {
        out.push_back({cur.hi, cur.hi});
        continue;
      }
      refine_root(sq, cur, bits);
      out.push_back(cur);
      continue;
    }
    Rational mid = (cur.lo + cur.hi) / 2;
    stack.push_back({cur.lo, mid});
    stack.push_back({mid, cur.hi});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo > b.lo; });
  return out;
}

FpPoly fp_reduce(const QPoly& p, std::int64_t l) {
  FpPoly r(p.c.size());
  BigInt L = static_cast<long>(l);
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    BigInt num = p.c[i].get_num(), den = p.c[i].get_den();
    if (den % L == 0) throw MathError("fp_reduce: coefficient not integral at l");
    BigInt nm = num % L, dm = den % L;
    std::int64_t v = mod(to_i64(nm), l);
    r[i] = mod(v * invmod(to_i64(dm), l), l);
  }
  fp_trim(r);
  return r;
}

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::int64_t l) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % l;
  fp_trim(r);
  return r;
}

void fp_divmod(const FpPoly& a, const FpPoly& b, std::int64_t l, FpPoly& q, FpPoly& r) {
  if (b.empty()) throw MathError("fp_divmod: division by zero");
  r = a;
  fp_trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
  std::int64_t inv = invmod(b.back(), l);
  while (!r.empty() && r.size() >= b.size()) {
    std::size_t d = r.size() - b.size();
    std::int64_t f = r.back() * inv % l;
    q[d] = f;
    for (std::size_t i = 0; i < b.size(); ++i) r[i + d] = mod(r[i + d] - f * b[i], l);
    fp_trim(r);
  }
  fp_trim(q);
}

std::vector<std::pair<FpPoly, int>> fp_factor(FpPoly a, std::int64_t l) {
  fp_trim(a);
  if (a.empty()) throw MathError("fp_factor: zero polynomial");
  std::int64_t inv = invmod(a.back(), l);
  for (auto& x : a) x = x * inv % l;
  std::vector<std::pair<FpPoly, int>> out;
  int d = 1;
  while (a.size() > 1) {
    if (2 * d > static_cast<int>(a.size()) - 1) {
      out.emplace_back(a, 1);  // remaining cofactor is irreducible
      break;
    }
    // enumerate monic polynomials of degree d
    std::int64_t total = ipow(l, d);
    bool found = false;
    for (std::int64_t idx = 0; idx < total && !found; ++idx) {
      FpPoly cand(d + 1);
      std::int64_t t = idx;
      for (int i = 0; i < d; ++i) {
        cand[i] = t % l;
        t /= l;
      }
      cand[d] = 1;
      FpPoly q, r;
      fp_divmod(a, cand, l, q, r);
      if (!r.empty()) continue;
      int e = 0;
      while (r.empty()) {
        a = q;
        ++e;
        if (a.size() <= 1) break;
        fp_divmod(a, cand, l, q, r);
      }
      out.emplace_back(cand, e);
      found = true;
    }
    if (!found) ++d;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hmf
