#include "hmf/cm.hpp"

#include "hmf/lattice.hpp"
#include "hmf/matrix.hpp"
#include "hmf/residue.hpp"

#include <cmath>
#include <numbers>

namespace hmf {

namespace {

bool squarefree(std::int64_t d) {
  for (const auto& [p, e] : factor(d))
    if (e > 1) return false;
  return true;
}

}  // namespace

std::int64_t quadratic_discriminant(std::int64_t d0) { return mod(d0, 4) == 1 ? d0 : 4 * d0; }

CMQuadExt make_cm(const std::string& label, OrderPtr base, std::int64_t d0, UnitGroupData base_units) {
  if (d0 >= 0 || !squarefree(d0)) throw MathError(label + ": d0 must be a negative squarefree integer");
  const FieldOrder& F = *base;
  std::int64_t dk = quadratic_discriminant(d0);
  if (gcd(F.discriminant, BigInt(static_cast<long>(dk))) != 1)
    throw MathError(label + ": ramification of F and Q(sqrt(" + std::to_string(d0) +
                    ")) is not disjoint; O_F O_K0 need not be maximal");
  CMQuadExt cm;
  cm.label = label;
  cm.base = base;
  cm.d0 = d0;
  cm.base_units = std::move(base_units);
  if (mod(d0, 4) == 1) {
    cm.omega_trace = 1;
    cm.omega_norm = (1 - d0) / 4;
  } else {
    cm.omega_trace = 0;
    cm.omega_norm = -d0;
  }
  const int n = F.n, N = 2 * n;
  std::vector<IMatrix> table(N, IMatrix::Zero(N, N));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < 2; ++a)
      for (int j = 0; j < n; ++j)
        for (int b = 0; b < 2; ++b) {
          IVector m = F.mul[i].col(j);
          IVector col = IVector::Zero(N);
          if (a + b == 0) {
            col.head(n) = m;
          } else if (a + b == 1) {
            col.tail(n) = m;
          } else {
            col.head(n) = -cm.omega_norm * m;
            col.tail(n) = cm.omega_trace * m;
          }
          table[i + a * n].col(j + b * n) = col;
        }
  // generator theta + k*omega, first k that is primitive
  std::string err;
  for (int k = 1; k <= 8; ++k) {
    QVector g = QVector::Zero(N);
    if (n > 1) g.head(n) = F.generator;
    g(n) += k;
    try {
      cm.order = std::make_shared<FieldOrder>(order_from_table(label, N, table, g, 64, false));
      break;
    } catch (const MathError& e) {
      err = e.what();
    }
  }
  if (!cm.order) throw MathError(label + ": no primitive element found (" + err + ")");
  const FieldOrder& K = *cm.order;

  cm.conj = IMatrix::Zero(N, N);
  for (int i = 0; i < n; ++i) {
    cm.conj(i, i) = 1;
    cm.conj(i, i + n) = cm.omega_trace;  // conj(e_i omega) = t e_i - e_i omega
    cm.conj(i + n, i + n) = -1;
  }
  cm.t2_gram = QMatrix(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      QVector bi = QVector::Zero(N), bj = QVector::Zero(N);
      bi(i) = 1;
      bj(j) = 1;
      cm.t2_gram(i, j) = trace(K, mul(K, bi, cm_conj(cm, bj)));
    }

  // torsion: Tr(x conj x) = 2n forces |sigma(x)| = 1 everywhere
  ZMatrix gz;
  BigInt gden;
  clear_denominators(cm.t2_gram, gz, gden);
  IMatrix g = to_imatrix(gz);
  fincke_pohst(g, BigInt(N), [&](const IVector& v, const BigInt& val) {
    if (val == N) cm.torsion.push_back(to_q(v));
    return true;
  });
  // units modulo base units: all norm-one elements in the reduced ball
  Rational ball = cm_orbit_ball(cm, Rational(1));
  BigInt ib;
  mpz_fdiv_q(ib.get_mpz_t(), ball.get_num_mpz_t(), ball.get_den_mpz_t());
  fincke_pohst(g, ib, [&](const IVector& v, const BigInt&) {
    if (v.isZero()) return true;
    if (norm(K, v) == 1) cm.unit_gens.push_back(to_q(v));
    return true;
  });
  return cm;
}

QVector cm_embed_base(const CMQuadExt& cm, const QVector& x) {
  QVector r = QVector::Zero(2 * cm.base->n);
  r.head(cm.base->n) = x;
  return r;
}

QVector cm_conj(const CMQuadExt& cm, const QVector& x) {
  QVector r = QVector::Zero(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x(j) == 0) continue;
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (cm.conj(i, j) != 0) r(i) += x(j) * static_cast<long>(cm.conj(i, j));
  }
  return r;
}

QVector cm_sqrt_d0(const CMQuadExt& cm) {
  const int n = cm.base->n;
  QVector r = QVector::Zero(2 * n);
  if (cm.omega_trace == 1) {  // sqrt(d0) = 2 omega - 1
    r(0) = -1;
    r(n) = 2;
  } else {
    r(n) = 1;
  }
  return r;
}

Ideal cm_extend(const CMQuadExt& cm, const Ideal& I) {
  std::vector<QVector> gens;
  for (const auto& b : ideal_basis_vectors(I)) gens.push_back(cm_embed_base(cm, b));
  return ideal_from_generators(*cm.order, gens);
}

IMatrix cm_lift_automorphism(const CMQuadExt& cm, const IMatrix& base_aut) {
  const int n = cm.base->n;
  IMatrix a = IMatrix::Zero(2 * n, 2 * n);
  a.block(0, 0, n, n) = base_aut;
  a.block(n, n, n, n) = base_aut;
  return a;
}

Ideal apply_automorphism(const FieldOrder& K, const IMatrix& aut, const Ideal& I) {
  QMatrix b = ideal_basis(I);
  QMatrix img = to_qmatrix(to_zmatrix(aut)) * b;
  (void)K;
  return ideal_from_lattice(img);
}

std::vector<PrimeIdeal> cm_primes_above(const CMQuadExt& cm, std::int64_t l) {
  const FieldOrder& F = *cm.base;
  const FieldOrder& K = *cm.order;
  std::vector<PrimeIdeal> out;
  int k = 0;
  for (const auto& P : primes_above(F, l)) {
    ResidueRing kf(cm.base, P.ideal, {P});
    Ideal PK = cm_extend(cm, P.ideal);
    std::vector<std::int64_t> roots;
    for (std::int64_t r = 0; r < kf.size(); ++r) {
      IVector x = kf.element(r);
      // g(x) = x^2 - t x + s
      IVector gx = mul(F, x, x) - cm.omega_trace * x;
      gx(0) += cm.omega_norm;
      if (kf.index(gx) == 0) roots.push_back(r);
    }
    auto make = [&](std::int64_t r, int e, int f) {
      PrimeIdeal Q;
      Q.p = l;
      Q.e = P.e * e;
      Q.f = P.f * f;
      QVector w = QVector::Zero(K.n);
      w(F.n) = 1;
      w.head(F.n) -= to_q(kf.element(r));
      Q.gen2 = w;
      Q.ideal = ideal_add(K, PK, principal_ideal(K, w));
      Q.label = cm.label + ":P" + std::to_string(l) + "_" + std::to_string(k++);
      out.push_back(Q);
    };
    if (roots.empty()) {
      PrimeIdeal Q;
      Q.p = l;
      Q.e = P.e;
      Q.f = 2 * P.f;
      Q.gen2 = QVector::Zero(K.n);
      Q.ideal = PK;
      Q.label = cm.label + ":P" + std::to_string(l) + "_" + std::to_string(k++);
      out.push_back(Q);
    } else if (roots.size() == 1) {
      make(roots[0], 2, 1);
    } else {
      make(roots[0], 1, 1);
      make(roots[1], 1, 1);
    }
  }
  return out;
}

Rational cm_orbit_ball(const CMQuadExt& cm, const Rational& abs_norm) {
  const FieldOrder& F = *cm.base;
  auto b = unit_halfwidths(F, cm.base_units);
  double base = std::pow(abs_norm.get_d(), 1.0 / F.n);
  double r = 0;
  for (int w = 0; w < F.n; ++w) r += 2 * base * std::exp(2 * b[w]);
  r = r * (1 + 1e-9) + 1e-6;
  return Rational(std::ceil(r));
}

std::int64_t cm_minkowski_bound(const CMQuadExt& cm) {
  const int N = cm.order->n, r2 = cm.base->n;
  double v = std::pow(4.0 / std::numbers::pi, r2);
  for (int i = 1; i <= N; ++i) v *= static_cast<double>(i) / N;
  v *= std::sqrt(std::fabs(cm.order->discriminant.get_d()));
  return static_cast<std::int64_t>(std::ceil(v));
}

}  // namespace hmf
