#include "hmf/local_constants.hpp"

#include "hmf/field.hpp"
#include "hmf/matrix.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace hmf {

namespace {

OrderPtr rational_order() {
  static OrderPtr Q = std::make_shared<FieldOrder>(order_from_min_poly("Q", {0, 1}));
  return Q;
}

CycRat rat(const Rational& r) { return CycRat::constant(1, r); }

CycRat rational_pow(std::int64_t b, std::int64_t e) {
  Rational r = 1;
  for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) r *= Rational(static_cast<long>(b));
  return rat(e < 0 ? Rational(1) / r : r);
}

CycInt cyc_pow(const CycInt& x, std::int64_t e) {
  CycInt r = CycInt::constant(1, BigInt(1));
  CycInt b = e < 0 ? x.conj() : x;  // only used on roots of unity
  for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) r *= b;
  return r;
}

// {y}_q = a / q^s
std::pair<std::int64_t, std::int64_t> q_fraction(const Rational& y, std::int64_t q) {
  BigInt num = y.get_num(), den = y.get_den();
  int s = 0;
  while (den % q == 0) {
    den /= q;
    ++s;
  }
  if (s == 0) return {0, 1};
  BigInt Q = 1;
  for (int i = 0; i < s; ++i) Q *= q;
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), Q.get_mpz_t());
  BigInt a = num * inv;
  mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), Q.get_mpz_t());
  return {to_i64(a), to_i64(Q)};
}

// r mod Q for a rational r with denominator prime to Q
std::int64_t residue_of(const Rational& r, std::int64_t Q) {
  BigInt n = r.get_num(), d = r.get_den(), BQ = Q, inv, out;
  if (!mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), BQ.get_mpz_t()) && Q > 1)
    throw MathError("denominator not invertible mod " + std::to_string(Q));
  if (Q == 1) return 0;
  out = n * inv;
  mpz_fdiv_r(out.get_mpz_t(), out.get_mpz_t(), BQ.get_mpz_t());
  return to_i64(out);
}

CycInt psi_value(const Rational& y, std::int64_t q) {
  auto [a, Q] = q_fraction(y, q);
  return CycInt::zeta(Q, mod(-a, Q));
}

// sum over u in (O/P^n)^x of rho(u) psi(Tr(u / alpha))
CycInt twisted_sum(OrderPtr K, const Ideal& Pn, std::int64_t q, const QVector& alpha_inv,
                   const std::function<CycInt(const IVector&)>& rho) {
  ResidueRing R(K, Pn);
  CycInt s = CycInt::constant(1, BigInt(0));
  if (R.size() == 1) {
    IVector one_v = to_int(one<Rational>(*K));
    return rho(one_v) * psi_value(trace(*K, alpha_inv), q);
  }
  for (auto u : R.units()) {
    IVector x = R.element(u);
    s += rho(x) * psi_value(trace(*K, mul(*K, to_q(x), alpha_inv)), q);
  }
  return s;
}

EpsilonValue finish(const CycInt& rho_alpha, std::int64_t normP, int n_psi, const CycInt& sum, Measure m) {
  EpsilonValue e;
  e.value = to_rat(rho_alpha.conj() * sum) * rational_pow(normP, n_psi);
  e.base = normP;
  e.half_exp = m == Measure::tamagawa ? -n_psi : 0;
  return e;
}

}  // namespace

CycRat EpsilonValue::squared() const { return value * value * rational_pow(base, half_exp); }
CycRat EpsilonValue::abs2() const { return value * value.conj() * rational_pow(base, half_exp); }

std::optional<CycRat> EpsilonValue::exact() const {
  if (half_exp % 2 != 0) return std::nullopt;
  return value * rational_pow(base, half_exp / 2);
}

std::string EpsilonValue::to_string() const {
  std::string s = "(" + value.to_string() + ")";
  if (half_exp != 0) s += " * " + std::to_string(base) + "^(" + std::to_string(half_exp) + "/2)";
  return s;
}

CycInt idelic_value_at_q(const DirichletChar& chi, std::int64_t q) {
  CycInt r = CycInt::constant(1, BigInt(1));
  for (auto [l, k] : factor(chi.modulus))
    if (l != q) r *= local_component(chi, l).value(q).conj();
  return r;
}

EpsilonValue epsilon_tate(const EpsilonInput& in) {
  if (in.n_psi != 0) throw MathError("epsilon_tate: psi = exp(-2 pi i {x}_q) has n(psi) = 0 over Q");
  const std::int64_t q = in.q;
  const DirichletChar cq = local_component(in.chi, q);
  const int f = conductor_exponent(in.chi, q);
  Rational alpha = in.shift ? *in.shift : Rational(static_cast<long>(ipow(q, f + in.n_psi)));
  const int v = valuation(alpha, q);
  if (v != f + in.n_psi)
    throw MathError("epsilon_tate: shift has valuation " + std::to_string(v) + ", expected " +
                    std::to_string(f + in.n_psi));
  // c_q(alpha) = c_q(q)^v * chi_q(unit part)
  Rational unit = alpha / Rational(static_cast<long>(ipow(q, v)));
  CycInt c_alpha = cyc_pow(idelic_value_at_q(in.chi, q), v) * cq.value(residue_of(unit, cq.modulus));
  OrderPtr Z = rational_order();
  QVector alpha_inv = QVector::Constant(1, Rational(1) / alpha);
  Ideal Pn = principal_ideal(*Z, from_int<Rational>(*Z, ipow(q, f)));
  CycInt s = twisted_sum(Z, Pn, q, alpha_inv, [&](const IVector& x) { return cq.value(to_i64(x(0))); });
  return finish(c_alpha, q, in.n_psi, s, in.measure);
}

CycRat katz_local(const DirichletChar& chi, std::int64_t q, const Rational& delta) {
  if (q == 2) throw MathError("katz_local: q must be prime to 2");
  const int f = conductor_exponent(chi, q);
  if (f == 0) throw MathError("katz_local: " + chi.label + " is unramified at " + std::to_string(q));
  if (delta == 0 || valuation(delta, q) != 0) throw MathError("katz_local: delta must be a q-adic unit");
  const DirichletChar cq = local_component(chi, q);
  const std::int64_t Q = ipow(q, f);
  // x = -1 / (2 delta a), a = q^f
  Rational x = Rational(-1) / (Rational(2) * delta * Rational(static_cast<long>(Q)));
  CycInt s = CycInt::constant(1, BigInt(0));
  for (std::int64_t u = 1; u < Q; ++u) {
    if (u % q == 0) continue;
    s += cq.value(u) * psi_value(Rational(static_cast<long>(u)) * x, q);
  }
  CycInt c_a = cyc_pow(idelic_value_at_q(chi, q), f);
  return to_rat(c_a.conj() * s) * rat(Rational(1, 1) / Rational(static_cast<long>(Q)));
}

KatzDeligneResult check_katz_deligne(const DirichletChar& chi, std::int64_t q, const Rational& delta) {
  KatzDeligneResult r;
  r.chi_label = chi.label;
  r.q = q;
  r.delta = delta;
  const int f = conductor_exponent(chi, q);
  EpsilonInput in;
  in.chi = chi;
  in.q = q;
  r.epsilon = epsilon_tate(in).value;
  r.katz = katz_local(chi, q, delta);
  const DirichletChar cq = local_component(chi, q);
  const std::int64_t Q = cq.modulus;
  const std::int64_t dres = residue_of(delta, Q);
  // N(theta_q) = 1 over Q
  r.rhs = rational_pow(q, f) * to_rat(cq.value(dres).conj()) * r.katz;
  r.holds = r.epsilon == r.rhs;
  r.ratio_order = lcm64(2 * cq.order, 2);
  for (std::int64_t e = 0; e < r.ratio_order; ++e)
    if (r.epsilon == to_rat(CycInt::zeta(r.ratio_order, e)) * r.rhs) {
      r.ratio_exp = e;
      break;
    }
  r.ratio_is_chi_of_minus_two_inverse =
      r.epsilon == to_rat(cq.value(mod(-2, Q)).conj()) * r.rhs;
  return r;
}

std::vector<DirichletChar> galois_characters(const TowerData& t, std::int64_t prime_bound) {
  if (t.base->n != 1) throw MathError("galois_characters: base field must be Q");
  const FieldOrder& T = *t.top;
  const BigInt D = abs(T.discriminant);
  const std::int64_t N = to_i64(D);
  std::vector<std::int64_t> split;
  for (auto l : primes_up_to(prime_bound)) {
    if (N % l == 0) continue;
    int roots = 0;
    for (std::int64_t x = 0; x < l; ++x) {
      BigInt v = 0;
      for (int i = T.min_poly.degree(); i >= 0; --i) v = v * x + T.min_poly.c[static_cast<std::size_t>(i)].get_num();
      if (v % l == 0) ++roots;
    }
    if (roots == T.n) split.push_back(l);
  }
  std::vector<DirichletChar> out;
  for (auto& c : dirichlet_characters(N)) {
    if (t.p % c.order != 0) continue;
    bool ok = std::all_of(split.begin(), split.end(), [&](std::int64_t l) { return c.exp_at(l) == 0; });
    if (!ok) continue;
    DirichletChar pc = primitive_character(c);
    if (std::find(out.begin(), out.end(), pc) == out.end()) out.push_back(pc);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.is_trivial() && !b.is_trivial(); });
  if (static_cast<int>(out.size()) != t.p)
    throw MathError("galois_characters: found " + std::to_string(out.size()) + " characters, expected " +
                    std::to_string(t.p));
  for (std::size_t i = 0; i < out.size(); ++i) out[i].label = "chi" + std::to_string(i);
  return out;
}

RamifiedPrime ramified_prime(const TowerData& t, std::int64_t q) {
  const FieldOrder& T = *t.top;
  auto ps = primes_above(T, q);
  if (ps.size() != 1 || ps[0].e != T.n)
    throw MathError("ramified_prime: " + std::to_string(q) + " is not totally ramified in " + T.label);
  RamifiedPrime rp;
  rp.q = q;
  rp.P = ps[0];
  auto g = principal_generator(T, t.top_units, rp.P.ideal);
  if (g.status != Principality::principal)
    throw MathError("ramified_prime: no generator found for the prime above " + std::to_string(q));
  rp.pi = g.generator;
  rp.n_psi = valuation(T, rp.P, different(T));
  return rp;
}

ConductorDiscriminantReport conductor_discriminant(const TowerData& t, const std::vector<DirichletChar>& chars) {
  if (t.p < 2) throw MathError("conductor_discriminant: trivial extension");
  if (t.base->n != 1) throw MathError("conductor_discriminant: base field must be Q");
  if (static_cast<int>(chars.size()) != t.p) throw MathError("conductor_discriminant: need exactly p characters");
  for (const auto& a : chars)
    for (const auto& b : chars) {
      DirichletChar c = primitive_character(char_mul(a, char_inverse(b)));
      bool found = std::any_of(chars.begin(), chars.end(), [&](const auto& x) { return primitive_character(x) == c; });
      if (!found) throw MathError("conductor_discriminant: character list is not a group");
    }
  ConductorDiscriminantReport r;
  r.disc = abs(t.top->discriminant);
  BigInt prod = 1;
  for (const auto& c : chars) {
    r.conductors.push_back(conductor(c));
    prod *= r.conductors.back();
  }
  r.global_ok = prod == r.disc;
  for (auto [q, k] : factor(to_i64(r.disc))) {
    ConductorDiscriminantReport::Local L;
    L.q = q;
    try {
      RamifiedPrime rp = ramified_prime(t, q);
      L.prime = rp.P.label;
      L.n_psi_top = rp.n_psi;
    } catch (const MathError&) {
      continue;  // not totally ramified
    }
    for (const auto& c : chars) L.sum_n_chi += conductor_exponent(c, q);
    L.ok = L.n_psi_top == L.sum_n_chi + t.p * L.n_psi_base;
    r.local.push_back(L);
  }
  r.ok = r.global_ok && !r.local.empty() &&
         std::all_of(r.local.begin(), r.local.end(), [](const auto& l) { return l.ok; });
  return r;
}

namespace {

// phi_q o N on O'/q^f O' = O'/P^(ef); at least P^1 so the ring is nontrivial
ResidueChar local_norm_character(const DirichletChar& phi, const TowerData& t, const RamifiedPrime& rp) {
  const DirichletChar pq = local_component(phi, rp.q);
  const int f = valuation(BigInt(pq.modulus), rp.q);
  Ideal m = ideal_pow(*t.top, rp.P.ideal, std::max(1, rp.P.e * f));
  auto R = std::make_shared<ResidueRing>(t.top, m);
  return compose_norm(pq, R);
}

}  // namespace

InductivityReport inductivity_degree_zero(const DirichletChar& phi, const TowerData& t,
                                          const std::vector<DirichletChar>& chars, std::int64_t q) {
  InductivityReport r;
  r.phi_label = phi.label;
  r.q = q;
  RamifiedPrime rp = ramified_prime(t, q);
  r.lhs = conductor_exponent(local_norm_character(phi, t, rp), rp.P);
  int s = 0;
  for (const auto& c : chars) {
    r.n_phichi.push_back(conductor_exponent(char_mul(phi, c), q));
    r.n_chi.push_back(conductor_exponent(c, q));
    s += r.n_phichi.back() - r.n_chi.back();
  }
  r.rhs = s;
  r.holds = r.lhs == r.rhs;
  return r;
}

EpsilonValue epsilon_top(const DirichletChar& phi, const TowerData& t, const RamifiedPrime& rp, Measure m) {
  const FieldOrder& T = *t.top;
  ResidueChar rho = local_norm_character(phi, t, rp);
  const int n = conductor_exponent(rho, rp.P);
  const int mexp = n + rp.n_psi;
  QVector alpha = power(T, rp.pi, mexp);
  // rho(alpha) = c_q(N alpha) for the idelic character of phi
  BigInt Na = Rational(norm(T, alpha)).get_num();
  const int v = valuation(Na, rp.q);
  BigInt unit = Na;
  for (int i = 0; i < v; ++i) unit /= rp.q;
  const DirichletChar pq = local_component(phi, rp.q);
  BigInt ures;
  mpz_fdiv_r(ures.get_mpz_t(), unit.get_mpz_t(), BigInt(pq.modulus).get_mpz_t());
  CycInt rho_alpha = cyc_pow(idelic_value_at_q(phi, rp.q), v) * pq.value(to_i64(ures));
  const ResidueRing& R = *rho.ring;
  Ideal Pn = ideal_pow(T, rp.P.ideal, n);
  CycInt s = twisted_sum(t.top, Pn, rp.q, inverse(T, alpha), [&](const IVector& x) { return rho.value(R.index(x)); });
  return finish(rho_alpha, to_i64(Rational(ideal_norm(rp.P.ideal)).get_num()), rp.n_psi, s, m);
}

EpsilonInductivityReport epsilon_inductivity(const DirichletChar& phi, const TowerData& t,
                                             const std::vector<DirichletChar>& chars, std::int64_t q) {
  EpsilonInductivityReport r;
  r.phi_label = phi.label;
  r.q = q;
  RamifiedPrime rp = ramified_prime(t, q);
  r.lhs = epsilon_top(phi, t, rp, Measure::tamagawa);
  r.rhs.value = CycRat::constant(1, Rational(1));
  r.rhs.base = q;
  for (const auto& c : chars) {
    EpsilonInput in;
    in.chi = char_mul(phi, c);
    in.q = q;
    in.measure = Measure::tamagawa;
    EpsilonValue e = epsilon_tate(in);
    r.rhs.value *= e.value;
    r.rhs.half_exp += e.half_exp;
  }
  r.abs2_equal = r.lhs.abs2() == r.rhs.abs2();
  auto a = r.lhs.exact(), b = r.rhs.exact();
  r.exact_equal = a && b ? *a == *b : r.lhs.squared() == r.rhs.squared() && r.abs2_equal;
  return r;
}

QVector cm_different_generator(const CMQuadExt& cm, const QVector& base_generator) {
  const FieldOrder& K = *cm.order;
  const int n = cm.base->n;
  QVector w = QVector::Zero(K.n);
  w(n) = 1;  // omega
  QVector d = w - cm_conj(cm, w);
  return mul(K, cm_embed_base(cm, base_generator), d);
}

DiffValuationReport diff_valuations(const CMQuadExt& cm, const CMQuadExt& cm2, const QVector& delta,
                                    const QVector& delta2, const TowerData& t) {
  if (cm.d0 != cm2.d0) throw MathError("diff_valuations: K and K' must come from the same K0");
  const FieldOrder& K = *cm.order;
  const FieldOrder& K2 = *cm2.order;
  if (!(cm_conj(cm, delta) == QVector(-delta)) || !(cm_conj(cm2, delta2) == QVector(-delta2)))
    throw MathError("diff_valuations: delta must satisfy conj(delta) = -delta");
  const std::int64_t p = t.p;
  auto primes = cm_primes_above(cm, p);
  if (t.base->n == 1 && (primes.size() != 2 || primes[0].e != 1))
    throw MathError("diff_valuations: " + std::to_string(p) + " does not split in K0");
  const Ideal D = different(K), D2 = different(K2);
  for (const auto& P : primes)
    if (valuation(K, P, delta) != valuation(K, P, D))
      throw MathError("diff_valuations: v(delta) differs from the different at " + P.label);
  for (const auto& P2 : cm_primes_above(cm2, p))
    if (valuation(K2, P2, delta2) != valuation(K2, P2, D2))
      throw MathError("diff_valuations: v(delta') differs from the different at " + P2.label);
  // N_{K'/K}(delta') via the lift of gamma fixing omega
  IMatrix g = cm_lift_automorphism(cm2, t.gamma);
  QMatrix gq = to_qmatrix(to_zmatrix(g));
  QVector nd = delta2, conjugate = delta2;
  for (int i = 1; i < p; ++i) {
    conjugate = gq * conjugate;
    nd = mul(K2, nd, conjugate);
  }
  const int n2 = t.top->n;
  QVector lo = nd.head(n2), hi = nd.tail(n2);
  QVector a = descend(t, lo), b = descend(t, hi);
  QVector nk(K.n);
  nk << a, b;
  DiffValuationReport r;
  r.p = p;
  for (const auto& P : primes) {
    DiffValuationReport::Row row;
    row.prime = P.label;
    row.v_delta_p = static_cast<int>(p) * valuation(K, P, delta);
    row.v_norm_delta2 = valuation(K, P, nk);
    row.difference = row.v_norm_delta2 - row.v_delta_p;
    if (row.difference != 0) r.nonzero = true;
    r.rows.push_back(row);
  }
  return r;
}

}  // namespace hmf
