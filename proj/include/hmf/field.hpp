#pragma once

#include "hmf/arith.hpp"
#include "hmf/interval.hpp"
#include "hmf/poly.hpp"

#include <memory>
#include <string>
#include <vector>

namespace hmf {

/// Maximal order of a totally real field, described by an integral basis
/// e_0 = 1, e_1, ..., e_{n-1} and its multiplication table.
///
/// Elements are plain coordinate vectors (`Vector<Scalar>`) with respect to
/// this basis; every free function below takes the order explicitly.
struct FieldOrder {
  std::string label;
  int n = 1;
  bool totally_real = true;  // false for CM orders: no real embeddings stored
  std::vector<IMatrix> mul;  // mul[i](k, j) = k-th coordinate of e_i * e_j
  BigInt discriminant;
  QVector generator;         // primitive element used for embeddings
  QPoly min_poly;            // minimal polynomial of `generator`
  bool monogenic = false;    // basis is the power basis of `generator`
  IMatrix trace_gram;        // Tr(e_i e_j)
  IVector traces;            // Tr(e_i)
  QMatrix basis_in_powers;   // column j: e_j as a polynomial in the generator
  std::vector<RootInterval> roots;  // real roots of min_poly, descending
  int precision_bits = 64;
  std::vector<std::vector<double>> emb;  // emb[w][j] ~ sigma_w(e_j)
};

using FieldElement = QVector;
using OrderPtr = std::shared_ptr<const FieldOrder>;

/// Power-basis order Z[x]/(f) for monic integral irreducible f with only real
/// roots. Throws MathError otherwise. The caller asserts maximality; the
/// discriminant of the order is recorded and presets compare it against the
/// expected field discriminant.
FieldOrder order_from_min_poly(const std::string& label, const std::vector<std::int64_t>& monic_coeffs,
                               int precision_bits = 64);

/// Order from an explicit multiplication table. `generator` must have degree n.
FieldOrder order_from_table(const std::string& label, int n, const std::vector<IMatrix>& table,
                            const QVector& generator, int precision_bits = 64, bool require_totally_real = true);

/// Validation helpers used by presets and tests.
bool table_is_commutative(const FieldOrder& K);
bool table_is_associative(const FieldOrder& K);
BigInt trace_form_det(const FieldOrder& K);

template <typename S>
Vector<S> one(const FieldOrder& K) {
  Vector<S> v = Vector<S>::Zero(K.n);
  v(0) = S(1);
  return v;
}

template <typename S>
Vector<S> from_int(const FieldOrder& K, long x) {
  Vector<S> v = Vector<S>::Zero(K.n);
  v(0) = S(x);
  return v;
}

/// Matrix of multiplication by x (column j = x * e_j).
template <typename S>
Matrix<S> mul_matrix(const FieldOrder& K, const Vector<S>& x) {
  if (x.size() != K.n) throw MathError("element does not belong to order " + K.label);
  Matrix<S> m = Matrix<S>::Zero(K.n, K.n);
  for (int i = 0; i < K.n; ++i) {
    if (x(i) == 0) continue;
    for (int r = 0; r < K.n; ++r)
      for (int c = 0; c < K.n; ++c)
        if (K.mul[i](r, c) != 0) m(r, c) += x(i) * S(static_cast<long>(K.mul[i](r, c)));
  }
  return m;
}

template <typename S>
Vector<S> mul(const FieldOrder& K, const Vector<S>& x, const Vector<S>& y) {
  if (y.size() != K.n) throw MathError("element does not belong to order " + K.label);
  Vector<S> r = Vector<S>::Zero(K.n);
  for (int i = 0; i < K.n; ++i) {
    if (x(i) == 0) continue;
    for (int j = 0; j < K.n; ++j) {
      if (y(j) == 0) continue;
      S xy = x(i) * y(j);
      for (int k = 0; k < K.n; ++k)
        if (K.mul[i](k, j) != 0) r(k) += xy * S(static_cast<long>(K.mul[i](k, j)));
    }
  }
  return r;
}

/// Overflow-checked integral multiplication.
IVector mul_checked(const FieldOrder& K, const IVector& x, const IVector& y);

Rational norm(const FieldOrder& K, const QVector& x);
Rational trace(const FieldOrder& K, const QVector& x);
BigInt norm(const FieldOrder& K, const IVector& x);
std::int64_t trace(const FieldOrder& K, const IVector& x);
/// Tr(x^2) = sum of squared embeddings, exact.
Rational t2(const FieldOrder& K, const QVector& x);

QVector inverse(const FieldOrder& K, const QVector& x);  // throws on zero
QVector power(const FieldOrder& K, const QVector& x, int e);
bool is_integral(const QVector& x);
IVector to_int(const QVector& x);  // throws when not integral / overflow
QVector to_q(const IVector& x);
QPoly element_charpoly(const FieldOrder& K, const QVector& x);

/// Interval enclosures of all real embeddings of x at the given precision.
std::vector<Interval> embed_intervals(const FieldOrder& K, const QVector& x, int bits);
std::vector<double> embed(const FieldOrder& K, const QVector& x);
std::vector<double> embed(const FieldOrder& K, const IVector& x);

/// Certified signs of all embeddings; x must be nonzero.
std::vector<int> sign_vector(const FieldOrder& K, const QVector& x);
std::vector<int> sign_vector(const FieldOrder& K, const IVector& x);
bool is_totally_positive(const FieldOrder& K, const QVector& x);
bool is_totally_positive(const FieldOrder& K, const IVector& x);
/// Exact decision via Sturm sequences on the characteristic polynomial.
bool is_totally_positive_exact(const FieldOrder& K, const QVector& x);

/// Canonical element order: trace, then lexicographic coordinates.
bool canonical_less(const FieldOrder& K, const QVector& a, const QVector& b);

std::string format_element(const QVector& x);

}  // namespace hmf
