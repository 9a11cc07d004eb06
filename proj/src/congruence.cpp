#include "hmf/congruence.hpp"

#include "hmf/lattice.hpp"
#include "hmf/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace hmf {

QExpansion restrict_diagonal(const QExpansion& e, const TowerData& t, const Rational& trace_bound) {
  if (e.field != t.top->label) throw MathError("restrict_diagonal: expansion is not over the top field");
  if (e.trace_bound < trace_bound)
    throw MathError("restrict_diagonal: requested bound exceeds the completeness of the input");
  const FieldOrder& F = *t.base;
  QExpansion out;
  out.field = F.label;
  out.degree = F.n;
  std::vector<QVector> gens;
  for (const auto& v : ideal_basis_vectors(e.exponent_ideal)) gens.push_back(rel_trace(t, v));
  out.exponent_ideal = ideal_from_generators(F, gens);
  out.trace_bound = trace_bound;
  out.k = e.k;
  out.level = e.level;
  out.phi = "res(" + e.phi + ")";
  for (const auto& [key, v] : e.coeffs) {
    QVector y = rel_trace(t, key.vec());
    ExpKey ky = exp_key(F, y);
    if (ky.trace > trace_bound) continue;
    out.set(ky, out.at(ky) + v);
  }
  return out;
}

QExpansion frobenius_twist(const QExpansion& e, std::int64_t p) {
  if (p < 2) throw MathError("frobenius_twist: p must be at least 2");
  QExpansion out = e;
  out.coeffs.clear();
  Rational rp(static_cast<long>(p));
  for (const auto& [key, v] : e.coeffs) {
    ExpKey k2;
    k2.trace = key.trace * rp;
    for (const auto& c : key.coords) k2.coords.push_back(c * rp);
    out.coeffs.emplace(std::move(k2), v);
  }
  out.trace_bound = e.trace_bound * rp;
  if (e.exponent_ideal.hnf.size() > 0) out.exponent_ideal = ideal_scale(e.exponent_ideal, rp);
  out.phi = "Frob(" + e.phi + ")";
  return out;
}

std::uint64_t expansion_hash(const QExpansion& e) {
  std::ostringstream os;
  write_qexpansion(os, e);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<QVector> trace_fiber(const TowerData& t, const QVector& xi, const Ideal& b_top) {
  const FieldOrder& T = *t.top;
  Rational tr = trace(*t.base, xi);
  std::vector<QVector> out;
  for (auto& x : enumerate_totally_positive(T, b_top, tr))
    if (rel_trace(t, x) == xi) out.push_back(std::move(x));
  return out;
}

namespace {

std::vector<BigInt> ideal_key(const FieldOrder& K, const QVector& x) {
  Ideal I = principal_ideal(K, x);
  std::vector<BigInt> key(I.hnf.data(), I.hnf.data() + I.hnf.size());
  key.push_back(I.denom);
  return key;
}

BigInt reduce_mod(const BigInt& x, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool units_supported_y(const LocConstFn& phi) {
  const ResidueRing& R = phi.ring();
  const std::int64_t n = R.size();
  for (const auto& [key, v] : phi.table())
    if (!R.is_unit(key % n)) return false;
  if (!phi.units_y())
    for (const auto& t : phi.terms())
      if (std::any_of(t.chi_y.begin(), t.chi_y.end(), [](std::int64_t c) { return c != 0; })) return false;
  return true;
}

// a base ideal J with J O' = I and J principal
bool descends_to_principal(const TowerData& t, const QVector& a) {
  const FieldOrder& F = *t.base;
  Ideal I = principal_ideal(*t.top, a);
  Ideal J = contract_ideal(t, I);
  if (!(extend_ideal(t, J) == I)) return false;
  return principal_generator(F, t.base_units, J).status == Principality::principal;
}

}  // namespace

OrbitStructure orbit_structure(const TowerData& t, const QVector& xi, const Ideal& b, const DivisorTable& top_table) {
  const FieldOrder& T = *t.top;
  OrbitStructure s;
  s.xi = xi;
  Ideal b_top = extend_ideal(t, b);
  Ideal A = unit_ideal(T);
  std::map<std::pair<ExpKey, std::vector<BigInt>>, std::size_t> index;
  for (const auto& x : trace_fiber(t, xi, b_top)) {
    for (auto& [a, bb] : factorization_orbits(T, x, A, b_top, top_table)) {
      index.emplace(std::make_pair(exp_key(T, x), ideal_key(T, a)), s.triples.size());
      s.triples.push_back(Triple{x, a, bb, 0});
    }
  }
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> assigned(s.triples.size(), none);
  for (std::size_t i = 0; i < s.triples.size(); ++i) {
    if (assigned[i] != none) continue;
    GammaOrbit orb;
    std::size_t j = i;
    bool broken = false;
    do {
      orb.members.push_back(j);
      assigned[j] = s.orbits.size();
      QVector gx = galois(t, 1, s.triples[j].xi_top);
      QVector ga = galois(t, 1, s.triples[j].a);
      auto it = index.find(std::make_pair(exp_key(T, gx), ideal_key(T, ga)));
      if (it == index.end()) {
        s.errors.push_back("gamma image of a triple is missing from the fiber (xi' = " + format_element(gx) + ")");
        broken = true;
        break;
      }
      j = it->second;
    } while (j != i && orb.members.size() <= static_cast<std::size_t>(t.p));
    if (!broken && j != i) s.errors.push_back("gamma orbit does not close within p steps");
    const std::size_t sz = orb.members.size();
    if (sz != 1 && sz != static_cast<std::size_t>(t.p))
      s.errors.push_back("orbit of size " + std::to_string(sz) + " (expected 1 or " + std::to_string(t.p) + ")");
    orb.fixed = sz == 1;
    s.orbits.push_back(std::move(orb));
  }
  for (std::size_t i = 0; i < s.triples.size(); ++i) s.triples[i].orbit = assigned[i];
  return s;
}

OrbitDiagnostics orbit_diagnostics(const OrbitStructure& s, const TowerData& t, const LocConstFn& phi_top, int k,
                                   const Ideal& b) {
  const FieldOrder& T = *t.top;
  const FieldOrder& F = *t.base;
  const ResidueRing& R = phi_top.ring();
  OrbitDiagnostics d;
  d.xi = s.xi;
  for (const auto& e : s.errors) d.problems.push_back(e);
  if (!s.errors.empty()) d.sizes_ok = false;
  const BigInt p = t.p;
  for (const auto& orb : s.orbits) {
    ++d.size_counts[orb.members.size()];
    BigInt sub = 0;
    for (auto m : orb.members) {
      const Triple& tr = s.triples[m];
      BigInt v = phi_top(R.index(to_int(tr.a)), R.index(to_int(tr.b)));
      if (v != 0) sub += v * norm_power_term(T, tr.a, k);
    }
    d.total += sub;
    if (!orb.fixed) {
      if (reduce_mod(sub, p) != 0) {
        d.free_subtotals_vanish = false;
        d.problems.push_back("free orbit subtotal " + sub.get_str() + " is not divisible by p");
      }
      continue;
    }
    d.fixed_total += sub;
    const Triple& tr = s.triples[orb.members.front()];
    // only factors prime to the level are claimed to descend
    if (!R.is_unit(R.index(to_int(tr.a))) || !R.is_unit(R.index(to_int(tr.b)))) continue;
    ++d.fixed_count;
    QVector y;
    try {
      y = descend(t, tr.xi_top);
    } catch (const MathError& e) {
      d.fixed_exponents_in_pb = false;
      d.problems.push_back(std::string("fixed triple exponent not in the base: ") + e.what());
      continue;
    }
    if (QVector(y * Rational(t.p)) != s.xi || !ideal_contains(b, y)) {
      d.fixed_exponents_in_pb = false;
      d.problems.push_back("fixed triple exponent is not p times an element of b");
    }
    if (!descends_to_principal(t, tr.a) || !descends_to_principal(t, tr.b)) {
      d.fixed_descend = false;
      d.problems.push_back("fixed triple factor is not a base element up to units");
    }
  }
  // fixed orbits against the base factorizations of xi / p
  QVector y0 = s.xi / Rational(t.p);
  std::size_t base_count = 0;
  if (ideal_contains(b, y0) && is_totally_positive(F, y0))
    for (const auto& [a, bb] : factorization_orbits(F, y0, unit_ideal(F), b, t.base_units))
      if (R.is_unit(R.index(to_int(embed(t, a)))) && R.is_unit(R.index(to_int(embed(t, bb))))) ++base_count;
  if (base_count != d.fixed_count) {
    d.fixed_match_base = false;
    d.problems.push_back("fixed orbits (" + std::to_string(d.fixed_count) + ") differ from base factorizations of xi/p (" +
                         std::to_string(base_count) + ")");
  }
  return d;
}

OrbitDiagnostics orbit_diagnostics(const QVector& xi, const TowerData& t, const Ideal& b, const LocConstFn& phi_top,
                                   int k) {
  const FieldOrder& T = *t.top;
  Ideal b_top = extend_ideal(t, b);
  BigInt D = 0;
  for (const auto& x : trace_fiber(t, xi, b_top)) {
    Rational l = abs(norm(T, x)) / ideal_norm(b_top);
    BigInt f;
    mpz_fdiv_q(f.get_mpz_t(), l.get_num_mpz_t(), l.get_den_mpz_t());
    D = std::max(D, f);
  }
  DivisorTable table(T, unit_ideal(T), t.top_units, std::max(D, BigInt(1)));
  return orbit_diagnostics(orbit_structure(t, xi, b, table), t, phi_top, k, b);
}

CongruenceReport check_congruence(const LocConstFn& phi_top, const TowerData& t, const VerMap& ver, const Ideal& b,
                                  int k, const Rational& bound, const CongruenceOptions& opt, const std::string& preset) {
  const FieldOrder& T = *t.top;
  const FieldOrder& F = *t.base;
  CongruenceReport rep;
  rep.preset = preset;
  rep.phi_label = phi_top.label();
  rep.k = k;
  rep.p = t.p;
  rep.bound = bound;
  rep.modulus = 1;
  for (int i = 0; i < opt.modulus_power; ++i) rep.modulus *= t.p;

  try {
    rep.gamma_invariant = gamma_invariant(phi_top, t);
  } catch (const MathError& e) {
    rep.precondition_failures.push_back(e.what());
  }
  if (!rep.gamma_invariant) rep.precondition_failures.push_back("phi' is not Gamma-invariant");
  rep.units_supported = units_supported_x(phi_top) && units_supported_y(phi_top);
  if (!rep.units_supported) rep.precondition_failures.push_back("phi' is not supported on units in both variables");
  if (!is_integral(b)) rep.precondition_failures.push_back("b must be integral");
  rep.b_prime_to_p = is_integral(b) && ideal_add(F, b, principal_ideal(F, from_int<Rational>(F, t.p))) == unit_ideal(F);
  if (!rep.b_prime_to_p) rep.precondition_failures.push_back("b is not prime to p");
  rep.xi_verified = t.xi.has_value();
  if (!rep.precondition_failures.empty() && !opt.forced) {
    rep.refused = true;
    return rep;
  }

  ExpandOptions eo;
  eo.sanity = opt.forced;
  eo.level_label = format_ideal(phi_top.ring().modulus());
  Ideal b_top = extend_ideal(t, b);
  QExpansion top = expand(T, unit_ideal(T), b_top, phi_top, k, bound, t.top_units, eo);
  rep.lhs = restrict_diagonal(top, t, bound);

  LocConstFn phi = pullback_ver(phi_top, ver);
  eo.level_label = format_ideal(ver.base->modulus());
  QExpansion base = expand(F, unit_ideal(F), b, phi, t.p * k, bound / Rational(t.p), t.base_units, eo);
  rep.rhs = frobenius_twist(base, t.p);
  rep.lhs_hash = expansion_hash(rep.lhs);
  rep.rhs_hash = expansion_hash(rep.rhs);

  auto exps = enumerate_totally_positive(F, b, bound);
  rep.exponents_compared = exps.size();
  for (const auto& x : exps) {
    ExpKey key = exp_key(F, x);
    BigInt l = reduce_mod(rep.lhs.at(key), rep.modulus), r = reduce_mod(rep.rhs.at(key), rep.modulus);
    if (l != r) rep.mismatches.push_back(Mismatch{key, l, r});
  }

  if (opt.orbit_check && !exps.empty()) {
    BigInt D = 1;
    Rational nb = ideal_norm(b_top);
    for (const auto& [key, v] : top.coeffs) {
      Rational l = abs(norm(T, key.vec())) / nb;
      BigInt f;
      mpz_fdiv_q(f.get_mpz_t(), l.get_num_mpz_t(), l.get_den_mpz_t());
      D = std::max(D, f);
    }
    // exponents with zero coefficient still carry triples: bound by AM-GM on the trace
    Rational amgm = 1;
    for (int i = 0; i < T.n; ++i) amgm *= bound / Rational(T.n);
    Rational l = amgm / nb;
    BigInt f;
    mpz_fdiv_q(f.get_mpz_t(), l.get_num_mpz_t(), l.get_den_mpz_t());
    D = std::max(D, f);
    DivisorTable table(T, unit_ideal(T), t.top_units, D);
    for (const auto& x : exps) {
      auto diag = orbit_diagnostics(orbit_structure(t, x, b, table), t, phi_top, k, b);
      for (const auto& [sz, c] : diag.size_counts) rep.orbit_sizes[sz] += c;
      bool ok = diag.sizes_ok && diag.free_subtotals_vanish && diag.fixed_exponents_in_pb && diag.fixed_descend &&
                diag.fixed_match_base;
      if (diag.total != rep.lhs.at(exp_key(F, x))) {
        ok = false;
        diag.problems.push_back("orbit total differs from the restricted coefficient");
      }
      if (!ok) {
        rep.orbits_ok = false;
        for (const auto& pr : diag.problems) rep.orbit_problems.push_back(format_element(x) + ": " + pr);
      }
    }
  }
  return rep;
}

}  // namespace hmf
