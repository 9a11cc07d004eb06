#include "hmf/tower.hpp"

#include "hmf/lattice.hpp"
#include "hmf/matrix.hpp"

#include <algorithm>
#include <set>

namespace hmf {

namespace {

QVector apply(const IMatrix& m, const QVector& x) {
  QVector r = QVector::Zero(m.rows());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (x(j) == 0) continue;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) r(i) += x(j) * static_cast<long>(m(i, j));
  }
  return r;
}

QVector basis_vec(int n, int j) {
  QVector e = QVector::Zero(n);
  e(j) = 1;
  return e;
}

}  // namespace

TowerData make_tower(const std::string& label, OrderPtr base, OrderPtr top, int p,
                     const QVector& gamma_of_generator, const std::vector<QVector>& embed_images,
                     UnitGroupData base_units, UnitGroupData top_units, int xi_depth) {
  if (p < 3 || !is_prime(p)) throw MathError(label + ": tower requires an odd prime degree p >= 3");
  if (top->n != p * base->n) throw MathError(label + ": [F':Q] must equal p [F:Q]");
  TowerData t;
  t.label = label;
  t.base = base;
  t.top = top;
  t.p = p;
  t.base_units = std::move(base_units);
  t.top_units = std::move(top_units);
  t.xi_depth = xi_depth;
  const FieldOrder& T = *top;
  const FieldOrder& B = *base;

  t.embed_matrix = IMatrix::Zero(T.n, B.n);
  if (embed_images.empty()) {
    if (B.n != 1) throw MathError(label + ": embedding images required for a base other than Q");
    t.embed_matrix(0, 0) = 1;
  } else {
    if (static_cast<int>(embed_images.size()) != B.n) throw MathError(label + ": wrong number of embedding images");
    for (int j = 0; j < B.n; ++j) t.embed_matrix.col(j) = to_int(embed_images[j]);
  }
  if (QVector(apply(t.embed_matrix, one<Rational>(B))) != one<Rational>(T))
    throw MathError(label + ": embedding does not send 1 to 1");
  for (int i = 0; i < B.n; ++i)
    for (int j = 0; j < B.n; ++j) {
      QVector lhs = apply(t.embed_matrix, mul(B, basis_vec(B.n, i), basis_vec(B.n, j)));
      QVector rhs = mul(T, apply(t.embed_matrix, basis_vec(B.n, i)), apply(t.embed_matrix, basis_vec(B.n, j)));
      if (lhs != rhs) throw MathError(label + ": embedding is not multiplicative");
    }

  // gamma(e_j) = sum_k P(k, j) gamma(g)^k
  if (gamma_of_generator.size() != T.n) throw MathError(label + ": gamma image has wrong dimension");
  std::vector<QVector> gpow{one<Rational>(T)};
  for (int k = 1; k < T.n; ++k) gpow.push_back(mul(T, gpow.back(), gamma_of_generator));
  t.gamma = IMatrix(T.n, T.n);
  for (int j = 0; j < T.n; ++j) {
    QVector img = QVector::Zero(T.n);
    for (int k = 0; k < T.n; ++k) img += T.basis_in_powers(k, j) * gpow[k];
    if (!is_integral(img)) throw MathError(label + ": gamma does not preserve the order");
    t.gamma.col(j) = to_int(img);
  }
  for (int i = 0; i < T.n; ++i)
    for (int j = 0; j < T.n; ++j) {
      QVector lhs = apply(t.gamma, mul(T, basis_vec(T.n, i), basis_vec(T.n, j)));
      QVector rhs = mul(T, apply(t.gamma, basis_vec(T.n, i)), apply(t.gamma, basis_vec(T.n, j)));
      if (lhs != rhs) throw MathError(label + ": gamma is not a ring homomorphism");
    }
  IMatrix gp = IMatrix::Identity(T.n, T.n);
  for (int i = 0; i < p; ++i) {
    gp = t.gamma * gp;
    if (i < p - 1 && gp == IMatrix::Identity(T.n, T.n)) throw MathError(label + ": gamma has order smaller than p");
  }
  if (gp != IMatrix::Identity(T.n, T.n)) throw MathError(label + ": gamma^p is not the identity");
  if (IMatrix(t.gamma * t.embed_matrix) != t.embed_matrix) throw MathError(label + ": gamma does not fix the base");

  XiResult xr = rel_different_with_xi(t, xi_depth);
  t.rel_different = xr.different;
  t.xi = xr.xi;
  t.xi_all = xr.all;
  return t;
}

QVector embed(const TowerData& t, const QVector& x) {
  if (x.size() != t.base->n) throw MathError("embed: element does not belong to the base order");
  return apply(t.embed_matrix, x);
}

QVector galois(const TowerData& t, int i, const QVector& x) {
  i = static_cast<int>(mod(i, t.p));
  QVector r = x;
  for (int k = 0; k < i; ++k) r = apply(t.gamma, r);
  return r;
}

IVector galois(const TowerData& t, int i, const IVector& x) {
  i = static_cast<int>(mod(i, t.p));
  IVector r = x;
  for (int k = 0; k < i; ++k) r = t.gamma * r;
  return r;
}

QVector rel_trace(const TowerData& t, const QVector& x) {
  QVector s = QVector::Zero(t.top->n);
  QVector cur = x;
  for (int i = 0; i < t.p; ++i) {
    s += cur;
    cur = apply(t.gamma, cur);
  }
  // solve embed_matrix * y = s
  QMatrix e = to_qmatrix(to_zmatrix(t.embed_matrix));
  QMatrix et = e.transpose();
  QVector y = inverse(QMatrix(et * e)) * (et * s);
  if (QVector(e * y) != s) throw MathError(t.label + ": relative trace left the base (corrupted tower data)");
  return y;
}

Ideal extend_ideal(const TowerData& t, const Ideal& I) {
  std::vector<QVector> gens;
  for (const auto& b : ideal_basis_vectors(I)) gens.push_back(embed(t, b));
  return ideal_from_generators(*t.top, gens);
}

Ideal contract_ideal(const TowerData& t, const Ideal& I) {
  if (!is_integral(I)) throw MathError("contract_ideal: ideal must be integral");
  const int n = t.top->n, m = t.base->n;
  QMatrix M = inverse(ideal_basis(I)) * to_qmatrix(to_zmatrix(t.embed_matrix));
  ZMatrix N;
  BigInt d;
  clear_denominators(M, N, d);
  // y lies in the contraction iff N y = d z for some integer z
  ZMatrix S(n, m + n);
  S.setZero();
  S.leftCols(m) = N;
  for (int i = 0; i < n; ++i) S(i, m + i) = -d;
  ZMatrix ker = integer_kernel(S);
  std::vector<QVector> gens;
  for (Eigen::Index j = 0; j < ker.cols(); ++j) {
    QVector y(m);
    for (int i = 0; i < m; ++i) y(i) = Rational(ker(i, j));
    gens.push_back(y);
  }
  return ideal_from_generators(*t.base, gens);
}

QVector descend(const TowerData& t, const QVector& x) {
  if (galois(t, 1, x) != x) throw MathError("descend: element is not fixed by gamma");
  QMatrix e = to_qmatrix(to_zmatrix(t.embed_matrix));
  QMatrix et = e.transpose();
  QVector y = inverse(QMatrix(et * e)) * (et * x);
  if (QVector(e * y) != x) throw MathError("descend: element does not lie in the embedded base");
  return y;
}

XiResult rel_different_with_xi(const TowerData& t, int depth) {
  const FieldOrder& T = *t.top;
  XiResult res;
  res.different = ideal_mul(T, different(T), ideal_inverse(T, extend_ideal(t, different(*t.base))));
  require_full_rank(T, t.top_units);
  Rational nm = ideal_norm(res.different);
  Rational bound = orbit_ball_t2(T, t.top_units, nm);
  auto gs = search_generator(T, res.different, to_qmatrix(to_zmatrix(T.trace_gram)), bound, 50'000'000);
  if (gs.status == Principality::not_principal) {
    res.status = "not principal";
    return res;
  }
  if (gs.status == Principality::inconclusive) {
    res.status = "inconclusive";
    return res;
  }
  const QVector& g = gs.generator;
  // sign bookkeeping: sign(+-prod u^e * g) is determined by the sign vectors
  const int r = t.top_units.rank();
  std::vector<unsigned> usign;
  for (const auto& u : t.top_units.fundamental) usign.push_back(sign_mask(sign_vector(T, u)));
  unsigned gs_mask = sign_mask(sign_vector(T, g));
  const unsigned all = (1u << T.n) - 1;
  std::vector<int> ex(r, -depth);
  std::vector<QVector> found;
  while (true) {
    unsigned m = gs_mask;
    for (int j = 0; j < r; ++j)
      if (ex[j] % 2 != 0) m ^= usign[j];
    if (m == 0 || m == all) {
      QVector x = g;
      for (int j = 0; j < r; ++j)
        if (ex[j] != 0) x = mul(T, x, power(T, t.top_units.fundamental[j], ex[j]));
      if (m == all) x = -x;
      if (is_totally_positive(T, x)) found.push_back(x);
    }
    int j = 0;
    while (j < r && ex[j] == depth) ex[j++] = -depth;
    if (j == r) break;
    ++ex[j];
  }
  std::sort(found.begin(), found.end(), [&](const QVector& a, const QVector& b) { return canonical_less(T, a, b); });
  res.all = found;
  if (found.empty()) {
    res.status = "not found within depth";
  } else {
    res.xi = found.front();
    res.status = "found";
  }
  return res;
}

VerMap residue_ver(const TowerData& t, const Ideal& m) {
  if (!is_integral(m)) throw MathError("residue_ver: modulus must be integral");
  VerMap v;
  v.base = std::make_shared<ResidueRing>(t.base, m);
  v.top = std::make_shared<ResidueRing>(t.top, extend_ideal(t, m));
  v.image.resize(static_cast<std::size_t>(v.base->size()));
  for (std::int64_t i = 0; i < v.base->size(); ++i)
    v.image[i] = v.top->index(IVector(t.embed_matrix * v.base->element(i)));
  return v;
}

std::vector<std::int64_t> galois_on_residues(const TowerData& t, const ResidueRing& R, int i) {
  std::vector<QVector> imgs;
  for (const auto& b : ideal_basis_vectors(R.modulus())) imgs.push_back(galois(t, 1, b));
  if (ideal_from_lattice([&] {
        QMatrix m(t.top->n, t.top->n);
        for (int j = 0; j < t.top->n; ++j) m.col(j) = imgs[j];
        return m;
      }()) != R.modulus())
    throw MathError("galois_on_residues: modulus is not Gamma-stable");
  std::vector<std::int64_t> tab(static_cast<std::size_t>(R.size()));
  for (std::int64_t k = 0; k < R.size(); ++k) tab[k] = R.index(galois(t, i, R.element(k)));
  return tab;
}

}  // namespace hmf
