#include "hmf/lattice.hpp"

#include "hmf/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace hmf {

namespace {

BigInt quad_value(const IMatrix& g, const IVector& v) {
  const Eigen::Index n = g.rows();
  __int128 acc = 0;
  bool overflow = false;
  for (Eigen::Index i = 0; i < n && !overflow; ++i) {
    if (v(i) == 0) continue;
    for (Eigen::Index j = 0; j < n; ++j) {
      __int128 t;
      if (__builtin_mul_overflow(static_cast<__int128>(g(i, j)) * v(i), static_cast<__int128>(v(j)), &t) ||
          __builtin_add_overflow(acc, t, &acc)) {
        overflow = true;
        break;
      }
    }
  }
  if (!overflow) {
    bool neg = acc < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(acc) : static_cast<unsigned __int128>(acc);
    BigInt r = (BigInt(static_cast<unsigned long>(u >> 64)) << 64) + BigInt(static_cast<unsigned long>(u));
    return neg ? BigInt(-r) : r;
  }
  BigInt r = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      r += BigInt(static_cast<long>(g(i, j))) * static_cast<long>(v(i)) * static_cast<long>(v(j));
  return r;
}

}  // namespace

std::int64_t fincke_pohst(const IMatrix& gram, const BigInt& bound,
                          const std::function<bool(const IVector& v, const BigInt& value)>& visit) {
  const int n = static_cast<int>(gram.rows());
  if (bound < 0) return 0;
  // q(i,i) = r_ii^2, q(i,j) = r_ij / r_ii  (Fincke-Pohst form of the Cholesky factor)
  std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q[i][j] = static_cast<double>(gram(i, j));
  for (int i = 0; i < n; ++i) {
    if (q[i][i] <= 0) throw MathError("fincke_pohst: Gram matrix is not positive definite");
    for (int j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (int k = i + 1; k < n; ++k)
      for (int l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }
  const double C = bound.get_d();
  const double slack = 1e-7 * (C + 1.0) + 1e-6;
  IVector v = IVector::Zero(n);
  std::int64_t count = 0;
  bool stop = false;

  // recursive descent from the last coordinate
  std::function<void(int, double)> descend = [&](int i, double remaining) {
    if (stop) return;
    double center = 0.0;
    for (int j = i + 1; j < n; ++j) center -= q[i][j] * static_cast<double>(v(j));
    double rad = std::sqrt(std::max(0.0, (remaining + slack) / q[i][i]));
    auto lo = static_cast<std::int64_t>(std::ceil(center - rad - 1e-9));
    auto up = static_cast<std::int64_t>(std::floor(center + rad + 1e-9));
    for (std::int64_t x = lo; x <= up && !stop; ++x) {
      v(i) = x;
      double d = static_cast<double>(x) - center;
      double rem = remaining - q[i][i] * d * d;
      if (rem < -slack) continue;
      if (i == 0) {
        BigInt val = quad_value(gram, v);
        if (val <= bound) {
          ++count;
          if (!visit(v, val)) stop = true;
        }
      } else {
        descend(i - 1, rem);
      }
    }
    v(i) = 0;
  };
  if (n == 0) return 0;
  descend(n - 1, C);
  return count;
}

IMatrix trace_gram_of(const FieldOrder& K, const QMatrix& basis, BigInt& scale) {
  QMatrix g = basis.transpose() * to_qmatrix(to_zmatrix(K.trace_gram)) * basis;
  ZMatrix num;
  clear_denominators(g, num, scale);
  return to_imatrix(num);
}

std::vector<QVector> enumerate_t2_ball(const FieldOrder& K, const Ideal& L, const Rational& t2_bound) {
  QMatrix b = ideal_basis(L);
  BigInt scale;
  IMatrix g = trace_gram_of(K, b, scale);
  Rational sb = t2_bound * Rational(scale);
  BigInt ib;
  mpz_fdiv_q(ib.get_mpz_t(), sb.get_num_mpz_t(), sb.get_den_mpz_t());
  std::vector<QVector> out;
  fincke_pohst(g, ib, [&](const IVector& v, const BigInt&) {
    out.push_back(b * to_q(v));
    return true;
  });
  return out;
}

std::vector<QVector> enumerate_totally_positive(const FieldOrder& K, const Ideal& L, const Rational& trace_bound) {
  std::vector<QVector> out;
  if (trace_bound <= 0) return out;
  // x >> 0 and Tr(x) <= B imply Tr(x^2) <= B^2
  for (auto& x : enumerate_t2_ball(K, L, trace_bound * trace_bound)) {
    if (x.isZero()) continue;
    if (trace(K, x) > trace_bound) continue;
    if (!is_totally_positive(K, x)) continue;
    out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end(), [&](const QVector& a, const QVector& c) { return canonical_less(K, a, c); });
  return out;
}

GeneratorSearch search_generator(const FieldOrder& K, const Ideal& I, const QMatrix& order_gram,
                                 const Rational& bound, std::int64_t cap) {
  GeneratorSearch res;
  QMatrix b = ideal_basis(I);
  QMatrix g = b.transpose() * order_gram * b;
  ZMatrix num;
  BigInt scale;
  clear_denominators(g, num, scale);
  IMatrix gi = to_imatrix(num);
  Rational sb = bound * Rational(scale);
  BigInt ib;
  mpz_fdiv_q(ib.get_mpz_t(), sb.get_num_mpz_t(), sb.get_den_mpz_t());
  Rational target = ideal_norm(I);
  bool exceeded = false;
  fincke_pohst(gi, ib, [&](const IVector& v, const BigInt&) {
    if (++res.points > cap) {
      exceeded = true;
      return false;
    }
    if (v.isZero()) return true;
    QVector x = b * to_q(v);
    if (abs(norm(K, x)) == target) {
      res.status = Principality::principal;
      res.generator = x;
      return false;
    }
    return true;
  });
  if (res.status != Principality::principal) res.status = exceeded ? Principality::inconclusive : Principality::not_principal;
  return res;
}

}  // namespace hmf
