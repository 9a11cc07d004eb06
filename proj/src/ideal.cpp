#include "hmf/ideal.hpp"

#include "hmf/matrix.hpp"

#include <sstream>

namespace hmf {

namespace {

BigInt content(const ZMatrix& m) {
  BigInt g = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) g = gcd(g, m(i, j));
  return g;
}

}  // namespace

Ideal ideal_from_lattice(const QMatrix& basis) {
  ZMatrix num;
  BigInt den;
  clear_denominators(basis, num, den);
  Ideal I;
  I.hnf = hnf(num);
  BigInt g = gcd(den, content(I.hnf));
  if (g > 1) {
    for (Eigen::Index i = 0; i < I.hnf.rows(); ++i)
      for (Eigen::Index j = 0; j < I.hnf.cols(); ++j) I.hnf(i, j) /= g;
    den /= g;
  }
  I.denom = den;
  return I;
}

Ideal unit_ideal(const FieldOrder& K) {
  Ideal I;
  I.hnf = ZMatrix::Identity(K.n, K.n);
  I.denom = 1;
  return I;
}

Ideal ideal_from_generators(const FieldOrder& K, const std::vector<QVector>& gens) {
  if (gens.empty()) throw MathError("ideal with no generators");
  QMatrix cols(K.n, static_cast<Eigen::Index>(gens.size()) * K.n);
  Eigen::Index c = 0;
  bool nonzero = false;
  for (const auto& g : gens) {
    if (!g.isZero()) nonzero = true;
    QMatrix m = mul_matrix(K, g);
    for (int j = 0; j < K.n; ++j) cols.col(c++) = m.col(j);
  }
  if (!nonzero) throw MathError("zero ideal is not a lattice");
  return ideal_from_lattice(cols);
}

Ideal principal_ideal(const FieldOrder& K, const QVector& x) { return ideal_from_generators(K, {x}); }

QMatrix ideal_basis(const Ideal& I) {
  QMatrix b = to_qmatrix(I.hnf);
  Rational inv = Rational(1) / Rational(I.denom);
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) *= inv;
  return b;
}

std::vector<QVector> ideal_basis_vectors(const Ideal& I) {
  QMatrix b = ideal_basis(I);
  std::vector<QVector> out;
  for (Eigen::Index j = 0; j < b.cols(); ++j) out.push_back(b.col(j));
  return out;
}

bool is_integral(const Ideal& I) { return I.denom == 1; }

QVector ideal_coords(const Ideal& I, const QVector& x) {
  const Eigen::Index n = I.hnf.rows();
  QVector y = x * Rational(I.denom);
  QVector v(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    Rational s = y(i);
    for (Eigen::Index j = i + 1; j < n; ++j) s -= Rational(I.hnf(i, j)) * v(j);
    v(i) = s / Rational(I.hnf(i, i));
  }
  return v;
}

bool ideal_contains(const Ideal& I, const QVector& x) { return is_integral(ideal_coords(I, x)); }

bool ideal_contains(const Ideal& I, const IVector& x) {
  // integer back substitution without rationals when possible
  const Eigen::Index n = I.hnf.rows();
  std::vector<BigInt> v(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    BigInt s = BigInt(static_cast<long>(x(i))) * I.denom;
    for (Eigen::Index j = i + 1; j < n; ++j) s -= I.hnf(i, j) * v[j];
    if (s % I.hnf(i, i) != 0) return false;
    v[i] = s / I.hnf(i, i);
  }
  return true;
}

bool ideal_subset(const Ideal& a, const Ideal& b) {
  for (const auto& x : ideal_basis_vectors(a))
    if (!ideal_contains(b, x)) return false;
  return true;
}

bool is_module(const FieldOrder& K, const Ideal& I) {
  for (const auto& x : ideal_basis_vectors(I))
    for (int i = 0; i < K.n; ++i) {
      QVector e = QVector::Zero(K.n);
      e(i) = 1;
      if (!ideal_contains(I, mul(K, e, x))) return false;
    }
  return true;
}

Ideal ideal_mul(const FieldOrder& K, const Ideal& a, const Ideal& b) {
  // Z-span of products of Z-bases, computed on the integral numerators
  const int n = K.n;
  ZMatrix gens(n, n * n);
  Eigen::Index c = 0;
  for (int i = 0; i < n; ++i) {
    ZMatrix m = mul_matrix(K, ZVector(a.hnf.col(i)));
    for (int j = 0; j < n; ++j) gens.col(c++) = m * b.hnf.col(j);
  }
  QMatrix q = to_qmatrix(gens);
  Rational inv = Rational(1) / Rational(a.denom * b.denom);
  for (Eigen::Index i = 0; i < q.rows(); ++i)
    for (Eigen::Index j = 0; j < q.cols(); ++j) q(i, j) *= inv;
  return ideal_from_lattice(q);
}

Ideal ideal_add(const FieldOrder& K, const Ideal& a, const Ideal& b) {
  QMatrix ba = ideal_basis(a), bb = ideal_basis(b);
  QMatrix cols(K.n, 2 * K.n);
  cols << ba, bb;
  return ideal_from_lattice(cols);
}

Ideal ideal_inverse(const FieldOrder& K, const Ideal& a) {
  const int n = K.n;
  // x in a^{-1}  <=>  M(b_k) x integral for every basis vector b_k of a
  QMatrix stacked(n * n, n);
  auto basis = ideal_basis_vectors(a);
  for (int k = 0; k < n; ++k) stacked.block(k * n, 0, n, n) = mul_matrix(K, basis[k]);
  // row lattice of `stacked`
  ZMatrix num;
  BigInt den;
  clear_denominators(QMatrix(stacked.transpose()), num, den);
  ZMatrix h = hnf(num);  // columns span den * rowlattice
  QMatrix rows = to_qmatrix(h).transpose();
  Rational inv = Rational(1) / Rational(den);
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    for (Eigen::Index j = 0; j < rows.cols(); ++j) rows(i, j) *= inv;
  return ideal_from_lattice(inverse(rows));
}

Ideal ideal_intersect(const FieldOrder& K, const Ideal& a, const Ideal& b) {
  return ideal_inverse(K, ideal_add(K, ideal_inverse(K, a), ideal_inverse(K, b)));
}

Ideal ideal_pow(const FieldOrder& K, const Ideal& a, int e) {
  Ideal base = e >= 0 ? a : ideal_inverse(K, a);
  int k = e >= 0 ? e : -e;
  Ideal r = unit_ideal(K);
  while (k) {
    if (k & 1) r = ideal_mul(K, r, base);
    k >>= 1;
    if (k) base = ideal_mul(K, base, base);
  }
  return r;
}

Ideal ideal_scale(const Ideal& a, const Rational& s) {
  if (s == 0) throw MathError("scaling an ideal by zero");
  QMatrix b = ideal_basis(a);
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) *= s;
  return ideal_from_lattice(b);
}

Rational ideal_norm(const Ideal& I) {
  BigInt d = 1;
  for (Eigen::Index i = 0; i < I.hnf.rows(); ++i) d *= I.hnf(i, i);
  BigInt scale;
  mpz_pow_ui(scale.get_mpz_t(), I.denom.get_mpz_t(), static_cast<unsigned long>(I.hnf.rows()));
  return Rational(d) / Rational(scale);
}

Ideal different(const FieldOrder& K) {
  QMatrix g = to_qmatrix(to_zmatrix(K.trace_gram));
  Ideal dual = ideal_from_lattice(inverse(g));
  return ideal_inverse(K, dual);
}

std::vector<PrimeIdeal> primes_above(const FieldOrder& K, std::int64_t l) {
  if (!is_prime(l)) throw MathError("primes_above: not a prime");
  // index [O : Z[theta]] = 1 / |det(basis_in_powers)|
  Rational idx = abs(Rational(1) / det(K.basis_in_powers));
  if (idx.get_den() != 1) throw MathError("primes_above: malformed generator data");
  if (BigInt(idx.get_num()) % static_cast<long>(l) == 0)
    throw MathError(K.label + ": prime " + std::to_string(l) + " divides the index of the generator");
  if (!is_integral(K.generator)) throw MathError(K.label + ": generator is not integral");
  auto facs = fp_factor(fp_reduce(K.min_poly, l), l);
  std::vector<PrimeIdeal> out;
  int k = 0;
  for (const auto& [g, e] : facs) {
    QVector val = QVector::Zero(K.n);
    QVector pw = one<Rational>(K);
    for (std::size_t i = 0; i < g.size(); ++i) {
      val += Rational(static_cast<long>(g[i])) * pw;
      pw = mul(K, pw, K.generator);
    }
    PrimeIdeal P;
    P.p = l;
    P.e = e;
    P.f = static_cast<int>(g.size()) - 1;
    P.gen2 = val;
    P.ideal = ideal_from_generators(K, {from_int<Rational>(K, static_cast<long>(l)), val});
    P.label = "P" + std::to_string(l) + "_" + std::to_string(k++);
    out.push_back(P);
  }
  return out;
}

int valuation(const FieldOrder& K, const PrimeIdeal& P, const Ideal& I) {
  // strip the denominator, then divide by P while contained in P
  int v = -P.e * valuation(I.denom, P.p);
  Ideal J = I;
  J.denom = 1;
  Ideal Pinv = ideal_inverse(K, P.ideal);
  while (ideal_subset(J, P.ideal)) {
    J = ideal_mul(K, J, Pinv);
    ++v;
  }
  return v;
}

int valuation(const FieldOrder& K, const PrimeIdeal& P, const QVector& x) {
  if (x.isZero()) throw MathError("valuation of zero element");
  return valuation(K, P, principal_ideal(K, x));
}

std::string format_ideal(const Ideal& I) {
  std::ostringstream os;
  os << "(1/" << I.denom.get_str() << ")[";
  for (Eigen::Index j = 0; j < I.hnf.cols(); ++j) {
    if (j) os << "; ";
    for (Eigen::Index i = 0; i < I.hnf.rows(); ++i) {
      if (i) os << ' ';
      os << I.hnf(i, j).get_str();
    }
  }
  os << ']';
  return os.str();
}

}  // namespace hmf
