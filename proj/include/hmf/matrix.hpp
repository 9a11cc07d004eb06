#pragma once

#include "hmf/arith.hpp"

#include <vector>

namespace hmf {

/// Column-style Hermite normal form of the lattice spanned by the columns
/// of `gens` (n rows, any number of columns, full row rank required).
/// Result is n x n upper triangular, positive diagonal, 0 <= H(i,j) < H(i,i)
/// for j > i.
ZMatrix hnf(const ZMatrix& gens);

/// Same, but tolerates rank deficiency: returns the nonzero pivot columns
/// (n x r, r = rank) in echelon form. Used by kernel / image computations.
ZMatrix hnf_partial(const ZMatrix& gens);

struct SmithForm {
  std::vector<BigInt> divisors;  // nonzero invariant factors d1 | d2 | ...
  int rank = 0;
  int free_rank = 0;             // columns minus rank
};

/// Invariant factors of the integer matrix (rows = relations, cols = generators).
SmithForm smith(const ZMatrix& rel);

/// Exact determinant by Bareiss elimination.
BigInt det(const ZMatrix& m);
Rational det(const QMatrix& m);

/// Exact inverse; throws MathError when singular.
QMatrix inverse(const QMatrix& m);

/// Rank over Q.
int rank(const QMatrix& m);

/// Basis of the integer kernel {v in Z^cols : m v = 0}, as columns.
ZMatrix integer_kernel(const ZMatrix& m);

template <typename To, typename From>
Matrix<To> cast_matrix(const Matrix<From>& m) {
  Matrix<To> r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = To(m(i, j));
  return r;
}

ZMatrix to_zmatrix(const IMatrix& m);
IMatrix to_imatrix(const ZMatrix& m);  // throws OverflowError
QMatrix to_qmatrix(const ZMatrix& m);

/// Common denominator d and integer matrix N with m = N / d.
void clear_denominators(const QMatrix& m, ZMatrix& num, BigInt& den);

}  // namespace hmf
