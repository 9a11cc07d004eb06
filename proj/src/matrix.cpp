#include "hmf/matrix.hpp"

#include <algorithm>
#include <utility>

namespace hmf {

namespace {

using Col = std::vector<BigInt>;

std::vector<Col> columns_of(const ZMatrix& m) {
  std::vector<Col> cols(m.cols(), Col(m.rows()));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) cols[j][i] = m(i, j);
  return cols;
}

// a <- s*a + t*b, b <- u*a + v*b (simultaneously), unimodular when sv - tu = 1.
void combine(Col& a, Col& b, const BigInt& s, const BigInt& t, const BigInt& u, const BigInt& v) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    BigInt x = s * a[i] + t * b[i];
    BigInt y = u * a[i] + v * b[i];
    a[i] = std::move(x);
    b[i] = std::move(y);
  }
}

void axpy(Col& y, const BigInt& q, const Col& x) {  // y -= q*x
  if (q == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= q * x[i];
}

BigInt fdiv(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Column echelon form from the bottom row up. Columns of `cols` are reduced in
// place; `aux` (may be empty) receives the same column operations. Returns the
// pivot rows of the surviving columns, ordered so that the pivot columns end
// up at the right, zero columns at the left.
struct EchelonResult {
  std::vector<Col> pivots;  // pivot columns, pivots[k] has pivot row rows[k]
  std::vector<Col> pivot_aux;
  std::vector<int> rows;
  std::vector<Col> zero_aux;  // aux of columns that became zero
};

EchelonResult echelon(std::vector<Col> cols, std::vector<Col> aux, int nrows) {
  const bool track = !aux.empty();
  EchelonResult res;
  std::vector<bool> used(cols.size(), false);
  std::size_t remaining = cols.size();
  for (int i = nrows - 1; i >= 0 && remaining > 0; --i) {
    // pick the unused column with smallest nonzero |entry| in row i as pivot
    int piv = -1;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (used[j] || cols[j][i] == 0) continue;
      if (piv < 0 || abs(cols[j][i]) < abs(cols[piv][i])) piv = static_cast<int>(j);
    }
    if (piv < 0) continue;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (used[j] || static_cast<int>(j) == piv || cols[j][i] == 0) continue;
      BigInt a = cols[piv][i], b = cols[j][i], s, t;
      BigInt g = xgcd(a, b, s, t);
      BigInt u = -b / g, v = a / g;
      combine(cols[piv], cols[j], s, t, u, v);
      if (track) combine(aux[piv], aux[j], s, t, u, v);
    }
    if (cols[piv][i] < 0) {
      for (auto& x : cols[piv]) x = -x;
      if (track)
        for (auto& x : aux[piv]) x = -x;
    }
    used[piv] = true;
    --remaining;
    res.pivots.push_back(cols[piv]);
    if (track) res.pivot_aux.push_back(aux[piv]);
    res.rows.push_back(i);
  }
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (!used[j] && track) res.zero_aux.push_back(aux[j]);
  // reduce above-pivot entries: pivot k (row rows[k]) reduces later pivots' entries in that row
  for (std::size_t k = 0; k < res.pivots.size(); ++k) {
    int r = res.rows[k];
    for (std::size_t l = 0; l < k; ++l) {
      BigInt q = fdiv(res.pivots[l][r], res.pivots[k][r]);
      axpy(res.pivots[l], q, res.pivots[k]);
      if (track) axpy(res.pivot_aux[l], q, res.pivot_aux[k]);
    }
  }
  return res;
}

}  // namespace

ZMatrix hnf_partial(const ZMatrix& gens) {
  const int n = static_cast<int>(gens.rows());
  EchelonResult e = echelon(columns_of(gens), {}, n);
  const int r = static_cast<int>(e.pivots.size());
  ZMatrix h(n, r);
  // pivots were found bottom-up; place them so that column index increases with pivot row
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < n; ++i) h(i, r - 1 - k) = e.pivots[k][i];
  return h;
}

ZMatrix hnf(const ZMatrix& gens) {
  ZMatrix h = hnf_partial(gens);
  if (h.cols() != gens.rows()) throw MathError("hnf: generators do not span a full-rank lattice");
  return h;
}

ZMatrix integer_kernel(const ZMatrix& m) {
  const Eigen::Index c = m.cols();
  std::vector<Col> aux(c, Col(c, 0));
  for (Eigen::Index j = 0; j < c; ++j) aux[j][j] = 1;
  EchelonResult e = echelon(columns_of(m), aux, static_cast<int>(m.rows()));
  ZMatrix k(c, static_cast<Eigen::Index>(e.zero_aux.size()));
  for (std::size_t j = 0; j < e.zero_aux.size(); ++j)
    for (Eigen::Index i = 0; i < c; ++i) k(i, j) = e.zero_aux[j][i];
  return k;
}

SmithForm smith(const ZMatrix& rel) {
  ZMatrix a = rel;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  SmithForm out;
  Eigen::Index t = 0;
  while (t < rows && t < cols) {
    // locate a nonzero entry of minimal absolute value in the trailing block
    Eigen::Index pr = -1, pc = -1;
    for (Eigen::Index i = t; i < rows; ++i)
      for (Eigen::Index j = t; j < cols; ++j)
        if (a(i, j) != 0 && (pr < 0 || abs(a(i, j)) < abs(a(pr, pc)))) {
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    a.row(t).swap(a.row(pr));
    a.col(t).swap(a.col(pc));
    bool clean = false;
    while (!clean) {
      clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        BigInt q = fdiv(a(i, t), a(t, t));
        for (Eigen::Index j = t; j < cols; ++j) a(i, j) -= q * a(t, j);
        if (a(i, t) != 0) {
          a.row(t).swap(a.row(i));
          clean = false;
        }
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        BigInt q = fdiv(a(t, j), a(t, t));
        for (Eigen::Index i = t; i < rows; ++i) a(i, j) -= q * a(i, t);
        if (a(t, j) != 0) {
          a.col(t).swap(a.col(j));
          clean = false;
        }
      }
      if (clean) {
        // divisibility: pivot must divide the whole trailing block
        for (Eigen::Index i = t + 1; i < rows && clean; ++i)
          for (Eigen::Index j = t + 1; j < cols; ++j)
            if (a(i, j) % a(t, t) != 0) {
              for (Eigen::Index jj = t; jj < cols; ++jj) a(t, jj) += a(i, jj);
              clean = false;
              break;
            }
      }
    }
    out.divisors.push_back(abs(a(t, t)));
    ++t;
  }
  out.rank = static_cast<int>(out.divisors.size());
  out.free_rank = static_cast<int>(cols) - out.rank;
  return out;
}

BigInt det(const ZMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw MathError("det: non-square matrix");
  if (n == 0) return 1;
  ZMatrix a = m;
  BigInt prev = 1;
  int sgn = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      a.row(k).swap(a.row(r));
      sgn = -sgn;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) {
        BigInt v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    prev = a(k, k);
  }
  return sgn * a(n - 1, n - 1);
}

void clear_denominators(const QMatrix& m, ZMatrix& num, BigInt& den) {
  den = 1;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) den = lcm(den, BigInt(m(i, j).get_den()));
  num.resize(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      Rational v = m(i, j) * den;
      num(i, j) = v.get_num();
    }
}

Rational det(const QMatrix& m) {
  ZMatrix num;
  BigInt den;
  clear_denominators(m, num, den);
  Rational d = det(num);
  BigInt scale;
  mpz_pow_ui(scale.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(m.rows()));
  d /= scale;
  return d;
}

QMatrix inverse(const QMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw MathError("inverse: non-square matrix");
  QMatrix a = m;
  QMatrix inv = QMatrix::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw MathError("inverse: singular matrix");
    if (p != k) {
      a.row(k).swap(a.row(p));
      inv.row(k).swap(inv.row(p));
    }
    Rational pivot = a(k, k);
    for (Eigen::Index j = 0; j < n; ++j) {
      a(k, j) /= pivot;
      inv(k, j) /= pivot;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rational f = a(i, k);
      for (Eigen::Index j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

int rank(const QMatrix& m) {
  QMatrix a = m;
  int r = 0;
  for (Eigen::Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Eigen::Index p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.row(r).swap(a.row(p));
    for (Eigen::Index i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (Eigen::Index j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

ZMatrix to_zmatrix(const IMatrix& m) {
  ZMatrix r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = static_cast<long>(m(i, j));
  return r;
}

IMatrix to_imatrix(const ZMatrix& m) {
  IMatrix r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = to_i64(m(i, j));
  return r;
}

QMatrix to_qmatrix(const ZMatrix& m) {
  QMatrix r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

}  // namespace hmf
