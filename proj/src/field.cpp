#include "hmf/field.hpp"

#include "hmf/matrix.hpp"

#include <cmath>
#include <sstream>

namespace hmf {

namespace {

void finish_order(FieldOrder& K) {
  const int n = K.n;
  K.traces = IVector(n);
  for (int i = 0; i < n; ++i) K.traces(i) = K.mul[i].trace();
  K.trace_gram = IMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::int64_t t = 0;
      for (int k = 0; k < n; ++k) t = checked_add(t, checked_mul(K.mul[i](k, j), K.traces(k)));
      K.trace_gram(i, j) = t;
    }
  K.discriminant = det(to_zmatrix(K.trace_gram));

  // generator powers in the basis, then invert to express the basis in powers
  QMatrix pw(n, n);
  QVector g = one<Rational>(K);
  for (int k = 0; k < n; ++k) {
    pw.col(k) = g;
    g = mul(K, g, K.generator);
  }
  K.basis_in_powers = inverse(pw);  // throws if the generator is not primitive
  K.min_poly = charpoly(mul_matrix(K, K.generator));
  QPoly sq = squarefree_part(K.min_poly);
  if (sq.degree() != n) throw MathError(K.label + ": generator is not primitive");
  if (!K.totally_real) return;
  K.roots = real_roots(K.min_poly, K.precision_bits);
  if (static_cast<int>(K.roots.size()) != n) throw MathError(K.label + ": field is not totally real");

  K.emb.assign(n, std::vector<double>(n, 0.0));
  for (int w = 0; w < n; ++w) {
    Rational r = (K.roots[w].lo + K.roots[w].hi) / 2;
    for (int j = 0; j < n; ++j) {
      Rational v = 0;
      for (int k = n - 1; k >= 0; --k) v = v * r + K.basis_in_powers(k, j);
      K.emb[w][j] = v.get_d();
    }
  }
}

}  // namespace

FieldOrder order_from_min_poly(const std::string& label, const std::vector<std::int64_t>& f, int precision_bits) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n < 1 || f.back() != 1) throw MathError(label + ": minimal polynomial must be monic of degree >= 1");
  FieldOrder K;
  K.label = label;
  K.n = n;
  K.precision_bits = precision_bits;
  K.monogenic = true;
  // reductions of theta^m, m < 2n - 1
  std::vector<std::vector<std::int64_t>> pw(2 * n - 1, std::vector<std::int64_t>(n, 0));
  for (int m = 0; m < 2 * n - 1; ++m) {
    if (m < n) {
      pw[m][m] = 1;
      continue;
    }
    // theta^m = theta * theta^{m-1}
    const auto& prev = pw[m - 1];
    std::vector<std::int64_t> cur(n, 0);
    for (int k = 0; k + 1 < n; ++k) cur[k + 1] = prev[k];
    std::int64_t top = prev[n - 1];
    for (int k = 0; k < n; ++k) cur[k] = checked_sub(cur[k], checked_mul(top, f[k]));
    pw[m] = cur;
  }
  K.mul.assign(n, IMatrix::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) K.mul[i](k, j) = pw[i + j][k];
  K.generator = QVector::Zero(n);
  if (n > 1)
    K.generator(1) = 1;
  else
    K.generator(0) = 1;
  finish_order(K);
  return K;
}

FieldOrder order_from_table(const std::string& label, int n, const std::vector<IMatrix>& table,
                            const QVector& generator, int precision_bits, bool require_totally_real) {
  if (static_cast<int>(table.size()) != n) throw MathError(label + ": multiplication table has wrong size");
  FieldOrder K;
  K.label = label;
  K.n = n;
  K.precision_bits = precision_bits;
  K.mul = table;
  for (const auto& m : table)
    if (m.rows() != n || m.cols() != n) throw MathError(label + ": multiplication table has wrong shape");
  if (K.mul[0] != IMatrix::Identity(n, n)) throw MathError(label + ": first basis element must be 1");
  if (!table_is_commutative(K) || !table_is_associative(K))
    throw MathError(label + ": multiplication table is not commutative and associative");
  K.generator = generator;
  K.monogenic = false;
  K.totally_real = require_totally_real;
  finish_order(K);
  return K;
}

bool table_is_commutative(const FieldOrder& K) {
  for (int i = 0; i < K.n; ++i)
    for (int j = 0; j < K.n; ++j)
      if (K.mul[i].col(j) != K.mul[j].col(i)) return false;
  return true;
}

bool table_is_associative(const FieldOrder& K) {
  for (int i = 0; i < K.n; ++i)
    for (int j = 0; j < K.n; ++j)
      for (int k = 0; k < K.n; ++k) {
        // (e_i e_j) e_k vs e_i (e_j e_k)
        IVector eij = K.mul[i].col(j);
        IVector ejk = K.mul[j].col(k);
        IVector lhs = IVector::Zero(K.n), rhs = IVector::Zero(K.n);
        for (int a = 0; a < K.n; ++a) {
          lhs += eij(a) * K.mul[a].col(k);
          rhs += ejk(a) * K.mul[i].col(a);
        }
        if (lhs != rhs) return false;
      }
  return true;
}

BigInt trace_form_det(const FieldOrder& K) { return det(to_zmatrix(K.trace_gram)); }

IVector mul_checked(const FieldOrder& K, const IVector& x, const IVector& y) {
  IVector r = IVector::Zero(K.n);
  for (int i = 0; i < K.n; ++i) {
    if (x(i) == 0) continue;
    for (int j = 0; j < K.n; ++j) {
      if (y(j) == 0) continue;
      std::int64_t xy = checked_mul(x(i), y(j));
      for (int k = 0; k < K.n; ++k)
        if (K.mul[i](k, j) != 0) r(k) = checked_add(r(k), checked_mul(xy, K.mul[i](k, j)));
    }
  }
  return r;
}

Rational norm(const FieldOrder& K, const QVector& x) { return det(mul_matrix(K, x)); }

Rational trace(const FieldOrder& K, const QVector& x) {
  Rational t = 0;
  for (int i = 0; i < K.n; ++i) t += x(i) * static_cast<long>(K.traces(i));
  return t;
}

BigInt norm(const FieldOrder& K, const IVector& x) {
  const int n = K.n;
  // Bareiss in __int128 with overflow fallback to BigInt
  std::vector<__int128> a(n * n, 0);
  bool overflow = false;
  for (int i = 0; i < n && !overflow; ++i) {
    if (x(i) == 0) continue;
    for (int r = 0; r < n && !overflow; ++r)
      for (int c = 0; c < n; ++c) {
        __int128 t;
        if (__builtin_mul_overflow(static_cast<__int128>(x(i)), static_cast<__int128>(K.mul[i](r, c)), &t) ||
            __builtin_add_overflow(a[r * n + c], t, &a[r * n + c])) {
          overflow = true;
          break;
        }
      }
  }
  if (!overflow) {
    __int128 prev = 1;
    int sgn = 1;
    bool zero = false;
    for (int k = 0; k + 1 < n && !overflow && !zero; ++k) {
      if (a[k * n + k] == 0) {
        int r = k + 1;
        while (r < n && a[r * n + k] == 0) ++r;
        if (r == n) {
          zero = true;
          break;
        }
        for (int c = 0; c < n; ++c) std::swap(a[k * n + c], a[r * n + c]);
        sgn = -sgn;
      }
      for (int i = k + 1; i < n && !overflow; ++i)
        for (int j = k + 1; j < n; ++j) {
          __int128 p1, p2, d;
          if (__builtin_mul_overflow(a[i * n + j], a[k * n + k], &p1) ||
              __builtin_mul_overflow(a[i * n + k], a[k * n + j], &p2) || __builtin_sub_overflow(p1, p2, &d)) {
            overflow = true;
            break;
          }
          a[i * n + j] = d / prev;
        }
      prev = a[k * n + k];
    }
    if (zero) return 0;
    if (!overflow) {
      __int128 v = sgn * a[(n - 1) * n + (n - 1)];
      bool neg = v < 0;
      unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
      BigInt hi = static_cast<unsigned long>(u >> 64), lo = static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL);
      BigInt r = (hi << 64) + lo;
      return neg ? BigInt(-r) : r;
    }
  }
  return det(to_zmatrix(mul_matrix(K, x)));
}

std::int64_t trace(const FieldOrder& K, const IVector& x) {
  std::int64_t t = 0;
  for (int i = 0; i < K.n; ++i) t = checked_add(t, checked_mul(x(i), K.traces(i)));
  return t;
}

Rational t2(const FieldOrder& K, const QVector& x) { return trace(K, mul(K, x, x)); }

QVector inverse(const FieldOrder& K, const QVector& x) {
  if (x.isZero()) throw MathError("inverse of zero element");
  QMatrix m = mul_matrix(K, x);
  return inverse(m) * one<Rational>(K);
}

QVector power(const FieldOrder& K, const QVector& x, int e) {
  QVector base = e >= 0 ? x : inverse(K, x);
  unsigned int k = static_cast<unsigned int>(e >= 0 ? e : -e);
  QVector r = one<Rational>(K);
  while (k) {
    if (k & 1) r = mul(K, r, base);
    base = mul(K, base, base);
    k >>= 1;
  }
  return r;
}

bool is_integral(const QVector& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x(i).get_den() != 1) return false;
  return true;
}

IVector to_int(const QVector& x) {
  IVector r(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i).get_den() != 1) throw MathError("element is not integral: " + format_element(x));
    r(i) = to_i64(BigInt(x(i).get_num()));
  }
  return r;
}

QVector to_q(const IVector& x) {
  QVector r(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) r(i) = static_cast<long>(x(i));
  return r;
}

QPoly element_charpoly(const FieldOrder& K, const QVector& x) { return charpoly(mul_matrix(K, x)); }

std::vector<Interval> embed_intervals(const FieldOrder& K, const QVector& x, int bits) {
  QVector h = K.basis_in_powers * x;
  std::vector<Interval> out;
  out.reserve(K.n);
  for (int w = 0; w < K.n; ++w) {
    RootInterval r = K.roots[w];
    if (bits > K.precision_bits) refine_root(K.min_poly, r, bits);
    Interval root(r.lo, r.hi);
    Interval acc(Rational(0));
    for (int k = K.n - 1; k >= 0; --k) acc = acc * root + Interval(h(k));
    out.push_back(acc);
  }
  return out;
}

std::vector<double> embed(const FieldOrder& K, const QVector& x) {
  std::vector<double> out(K.n, 0.0);
  for (int w = 0; w < K.n; ++w)
    for (int j = 0; j < K.n; ++j) out[w] += x(j).get_d() * K.emb[w][j];
  return out;
}

std::vector<double> embed(const FieldOrder& K, const IVector& x) {
  std::vector<double> out(K.n, 0.0);
  for (int w = 0; w < K.n; ++w)
    for (int j = 0; j < K.n; ++j) out[w] += static_cast<double>(x(j)) * K.emb[w][j];
  return out;
}

std::vector<int> sign_vector(const FieldOrder& K, const QVector& x) {
  if (x.isZero()) throw MathError("sign_vector of zero");
  for (int bits = 64; bits <= 8192; bits *= 2) {
    auto iv = embed_intervals(K, x, std::max(bits, K.precision_bits));
    std::vector<int> s;
    bool ok = true;
    for (const auto& v : iv) {
      int sg = v.certified_sign();
      if (sg == 0) {
        ok = false;
        break;
      }
      s.push_back(sg);
    }
    if (ok) return s;
  }
  throw MathError("sign_vector: precision exhausted");
}

std::vector<int> sign_vector(const FieldOrder& K, const IVector& x) {
  // double evaluation with a generous error bound; fall back to intervals
  std::vector<int> s(K.n, 0);
  for (int w = 0; w < K.n; ++w) {
    double v = 0, mag = 0;
    for (int j = 0; j < K.n; ++j) {
      double t = static_cast<double>(x(j)) * K.emb[w][j];
      v += t;
      mag += std::fabs(t);
    }
    if (std::fabs(v) <= 1e-9 * (mag + 1.0)) return sign_vector(K, to_q(x));
    s[w] = v > 0 ? 1 : -1;
  }
  return s;
}

bool is_totally_positive_exact(const FieldOrder& K, const QVector& x) {
  // all roots of the (real-rooted) charpoly are positive iff every distinct
  // real root of its squarefree part lies in (0, inf)
  QPoly sq = squarefree_part(element_charpoly(K, x));
  auto seq = sturm_sequence(sq);
  return sturm_count_above(seq, Rational(0)) == sturm_count_all(seq) && sq.eval(Rational(0)) != 0;
}

bool is_totally_positive(const FieldOrder& K, const QVector& x) {
  if (x.isZero()) return false;
  for (int bits = 64; bits <= 512; bits *= 2) {
    auto iv = embed_intervals(K, x, std::max(bits, K.precision_bits));
    bool undecided = false;
    for (const auto& v : iv) {
      if (v.negative()) return false;
      if (!v.positive()) undecided = true;
    }
    if (!undecided) return true;
  }
  return is_totally_positive_exact(K, x);
}

bool is_totally_positive(const FieldOrder& K, const IVector& x) {
  if (x.isZero()) return false;
  for (int w = 0; w < K.n; ++w) {
    double v = 0, mag = 0;
    for (int j = 0; j < K.n; ++j) {
      double t = static_cast<double>(x(j)) * K.emb[w][j];
      v += t;
      mag += std::fabs(t);
    }
    if (std::fabs(v) <= 1e-9 * (mag + 1.0)) return is_totally_positive(K, to_q(x));
    if (v < 0) return false;
  }
  return true;
}

bool canonical_less(const FieldOrder& K, const QVector& a, const QVector& b) {
  Rational ta = trace(K, a), tb = trace(K, b);
  if (ta != tb) return ta < tb;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return a(i) < b(i);
  return false;
}

std::string format_element(const QVector& x) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) os << ", ";
    os << x(i).get_str();
  }
  os << ']';
  return os.str();
}

}  // namespace hmf
