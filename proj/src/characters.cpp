#include "hmf/characters.hpp"

#include "hmf/field.hpp"

#include <numeric>
#include <sstream>

namespace hmf {

namespace {

DirichletChar normalized(DirichletChar c) {
  std::int64_t g = c.order;
  for (auto e : c.exps)
    if (e > 0) g = gcd64(g, e);
  if (g > 1) {
    c.order /= g;
    for (auto& e : c.exps)
      if (e > 0) e /= g;
  }
  return c;
}

// x = a mod m1, x = b mod m2 for coprime m1, m2
std::int64_t crt(std::int64_t a, std::int64_t m1, std::int64_t b, std::int64_t m2) {
  if (m2 == 1) return mod(a, m1);
  if (m1 == 1) return mod(b, m2);
  std::int64_t t = mod(checked_mul(mod(b - a, m2), invmod(mod(m1, m2), m2)), m2);
  return mod(a + checked_mul(m1, t), m1 * m2);
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (auto [q, k] : factor(n)) r = r / q * (q - 1);
  return r;
}

std::int64_t primitive_root(std::int64_t q, int k) {
  const std::int64_t Q = ipow(q, k), ph = euler_phi(Q);
  auto fs = factor(ph);
  for (std::int64_t g = 2; g < Q; ++g) {
    if (g % q == 0) continue;
    bool ok = true;
    for (auto [r, e] : fs)
      if (powmod(g, ph / r, Q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw MathError("no primitive root mod " + std::to_string(Q));
}

}  // namespace

std::int64_t DirichletChar::exp_at(std::int64_t u) const { return exps[static_cast<std::size_t>(mod(u, modulus))]; }

CycInt DirichletChar::value(std::int64_t u) const {
  std::int64_t e = exp_at(u);
  if (e < 0) return CycInt::constant(1, BigInt(0));
  return CycInt::zeta(order, e);
}

bool DirichletChar::is_trivial() const {
  for (auto e : exps)
    if (e > 0) return false;
  return true;
}

DirichletChar trivial_character(std::int64_t N) {
  if (N < 1) throw MathError("character modulus must be positive");
  DirichletChar c;
  c.modulus = N;
  c.exps.assign(static_cast<std::size_t>(N), 0);
  for (std::int64_t u = 0; u < N; ++u)
    if (gcd64(u, N) != 1) c.exps[static_cast<std::size_t>(u)] = -1;
  c.label = "1 mod " + std::to_string(N);
  return c;
}

DirichletChar quadratic_character(std::int64_t q) {
  if (q < 3 || !is_prime(q)) throw MathError("quadratic_character: odd prime modulus required");
  DirichletChar c = trivial_character(q);
  c.order = 2;
  for (std::int64_t u = 1; u < q; ++u) c.exps[static_cast<std::size_t>(u)] = powmod(u, (q - 1) / 2, q) == 1 ? 0 : 1;
  c.label = "(./" + std::to_string(q) + ")";
  return c;
}

std::vector<DirichletChar> dirichlet_characters(std::int64_t N) {
  if (N < 1) throw MathError("character modulus must be positive");
  // independent generators of (Z/N)^x with their orders
  std::vector<std::pair<std::int64_t, std::int64_t>> gens;
  for (auto [q, k] : factor(N)) {
    const std::int64_t Q = ipow(q, k), rest = N / Q;
    auto lift = [&](std::int64_t g) { return crt(g, Q, 1, rest); };
    if (q == 2) {
      if (k >= 2) gens.push_back({lift(Q - 1), 2});
      if (k >= 3) gens.push_back({lift(5), Q / 4});
    } else {
      gens.push_back({lift(primitive_root(q, k)), euler_phi(Q)});
    }
  }
  std::int64_t L = 1;
  for (auto& g : gens) L = lcm64(L, g.second);
  // discrete logarithms: residue -> exponent tuple
  std::vector<std::vector<std::int64_t>> dlog(static_cast<std::size_t>(N));
  std::vector<std::int64_t> a(gens.size(), 0);
  while (true) {
    std::int64_t x = 1 % N;
    for (std::size_t i = 0; i < gens.size(); ++i) x = mod(checked_mul(x, powmod(gens[i].first, a[i], N)), N);
    dlog[static_cast<std::size_t>(x)] = a;
    std::size_t i = 0;
    while (i < gens.size() && ++a[i] == gens[i].second) a[i++] = 0;
    if (i == gens.size()) break;
  }
  std::vector<DirichletChar> out;
  std::vector<std::int64_t> j(gens.size(), 0);
  while (true) {
    DirichletChar c = trivial_character(N);
    c.order = L;
    for (std::int64_t u = 0; u < N; ++u) {
      if (c.exps[static_cast<std::size_t>(u)] < 0) continue;
      std::int64_t e = 0;
      const auto& d = dlog[static_cast<std::size_t>(u)];
      for (std::size_t i = 0; i < gens.size(); ++i) e += d[i] * j[i] * (L / gens[i].second);
      c.exps[static_cast<std::size_t>(u)] = mod(e, L);
    }
    std::ostringstream lab;
    lab << "chi_" << N << "[";
    for (std::size_t i = 0; i < j.size(); ++i) lab << (i ? "," : "") << j[i];
    lab << "]";
    c = normalized(c);
    c.label = lab.str();
    out.push_back(std::move(c));
    std::size_t i = 0;
    while (i < gens.size() && ++j[i] == gens[i].second) j[i++] = 0;
    if (i == gens.size()) break;
  }
  return out;
}

DirichletChar char_mul(const DirichletChar& a, const DirichletChar& b) {
  const std::int64_t M = lcm64(a.modulus, b.modulus), L = lcm64(a.order, b.order);
  DirichletChar c = trivial_character(M);
  c.order = L;
  for (std::int64_t u = 0; u < M; ++u) {
    if (c.exps[static_cast<std::size_t>(u)] < 0) continue;
    c.exps[static_cast<std::size_t>(u)] = mod(a.exp_at(u) * (L / a.order) + b.exp_at(u) * (L / b.order), L);
  }
  c = normalized(c);
  c.label = a.label + "*" + b.label;
  return c;
}

DirichletChar char_pow(const DirichletChar& a, std::int64_t e) {
  DirichletChar c = a;
  for (auto& x : c.exps)
    if (x >= 0) x = mod(checked_mul(x, e), a.order);
  c = normalized(c);
  c.label = a.label + "^" + std::to_string(e);
  return c;
}

DirichletChar char_inverse(const DirichletChar& a) {
  DirichletChar c = char_pow(a, -1);
  c.label = a.label + "^-1";
  return c;
}

DirichletChar char_induce(const DirichletChar& a, std::int64_t M) {
  if (M % a.modulus != 0) throw MathError("char_induce: target modulus is not a multiple");
  DirichletChar c = char_mul(a, trivial_character(M));
  c.label = a.label;
  return c;
}

std::int64_t conductor(const DirichletChar& chi) {
  const std::int64_t N = chi.modulus;
  for (std::int64_t d = 1; d <= N; ++d) {
    if (N % d) continue;
    bool ok = true;
    for (std::int64_t u = 1 % d; u < N && ok; u += d)
      if (chi.exp_at(u) > 0) ok = false;
    if (ok) return d;
  }
  return N;
}

bool is_primitive(const DirichletChar& chi) { return conductor(chi) == chi.modulus; }

DirichletChar primitive_character(const DirichletChar& chi) {
  const std::int64_t f = conductor(chi);
  DirichletChar c = trivial_character(f);
  c.order = chi.order;
  for (std::int64_t u = 0; u < f; ++u) {
    if (c.exps[static_cast<std::size_t>(u)] < 0) continue;
    // a unit mod N in the class of u
    std::int64_t v = u;
    while (gcd64(v, chi.modulus) != 1) v += f;
    c.exps[static_cast<std::size_t>(u)] = chi.exp_at(v);
  }
  c = normalized(c);
  c.label = chi.label;
  return c;
}

int conductor_exponent(const DirichletChar& chi, std::int64_t q) {
  const std::int64_t N = chi.modulus;
  const int v = valuation(BigInt(N), q);
  const std::int64_t Q = ipow(q, v), rest = N / Q;
  for (int j = 0; j <= v; ++j) {
    const std::int64_t qj = ipow(q, j);
    bool trivial = true;
    for (std::int64_t t = 0; t < Q / qj && trivial; ++t) {
      std::int64_t u = crt(1 + t * qj, Q, 1, rest);
      if (gcd64(u, N) == 1 && chi.exp_at(u) > 0) trivial = false;
    }
    if (trivial) return j;
  }
  return v;
}

DirichletChar local_component(const DirichletChar& chi, std::int64_t q) {
  const int v = valuation(BigInt(chi.modulus), q);
  const std::int64_t Q = ipow(q, v), rest = chi.modulus / Q;
  DirichletChar c = trivial_character(Q);
  c.order = chi.order;
  for (std::int64_t u = 0; u < Q; ++u)
    if (c.exps[static_cast<std::size_t>(u)] >= 0) c.exps[static_cast<std::size_t>(u)] = chi.exp_at(crt(u, Q, 1, rest));
  c = normalized(c);
  c.label = chi.label + "_" + std::to_string(q);
  return c;
}

CycInt gauss_sum(const DirichletChar& chi, GaussSign sign) {
  if (!is_primitive(chi)) throw MathError("gauss_sum: character " + chi.label + " is not primitive");
  const std::int64_t f = chi.modulus, L = lcm64(chi.order, f);
  std::vector<BigInt> raw(static_cast<std::size_t>(L), BigInt(0));
  for (std::int64_t u = 0; u < f; ++u) {
    std::int64_t e = chi.exp_at(u);
    if (e < 0) continue;
    std::int64_t add = (sign == GaussSign::minus ? -u : u) * (L / f);
    raw[static_cast<std::size_t>(mod(e * (L / chi.order) + add, L))] += 1;
  }
  return CycInt::from_raw(L, raw);
}

CycInt ResidueChar::value(std::int64_t idx) const {
  std::int64_t e = exps[static_cast<std::size_t>(idx)];
  if (e < 0) return CycInt::constant(1, BigInt(0));
  return CycInt::zeta(order, e);
}

bool ResidueChar::is_trivial() const {
  for (auto e : exps)
    if (e > 0) return false;
  return true;
}

ResidueChar compose_norm(const DirichletChar& phi, std::shared_ptr<const ResidueRing> ring) {
  const FieldOrder& K = ring->order();
  if (!ideal_subset(ring->modulus(), principal_ideal(K, from_int<Rational>(K, phi.modulus))))
    throw MathError("compose_norm: the ring modulus does not determine norms mod " + std::to_string(phi.modulus));
  ResidueChar r;
  r.ring = ring;
  r.order = phi.order;
  r.exps.assign(static_cast<std::size_t>(ring->size()), -1);
  const BigInt N = phi.modulus;
  for (std::int64_t i = 0; i < ring->size(); ++i) {
    if (!ring->is_unit(i)) continue;
    BigInt n = norm(K, ring->element(i));
    BigInt red;
    mpz_fdiv_r(red.get_mpz_t(), n.get_mpz_t(), N.get_mpz_t());
    r.exps[static_cast<std::size_t>(i)] = phi.exp_at(to_i64(red));
  }
  return r;
}

int conductor_exponent(const ResidueChar& rho, const PrimeIdeal& P) {
  const ResidueRing& R = *rho.ring;
  const FieldOrder& K = R.order();
  const int depth = valuation(K, P, R.modulus());
  if (!(ideal_pow(K, P.ideal, depth) == R.modulus()))
    throw MathError("conductor_exponent: ring modulus is not a power of " + P.label);
  const auto units = R.units();
  const IVector one_v = R.element(R.one());
  for (int j = 0; j <= depth; ++j) {
    Ideal Pj = ideal_pow(K, P.ideal, j);
    bool trivial = true;
    for (auto u : units) {
      if (rho.exps[static_cast<std::size_t>(u)] == 0) continue;
      IVector d = R.element(u) - one_v;
      if (ideal_contains(Pj, d)) {
        trivial = false;
        break;
      }
    }
    if (trivial) return j;
  }
  return depth;
}

std::string format_char(const DirichletChar& chi) {
  std::ostringstream os;
  os << (chi.label.empty() ? "chi" : chi.label) << " mod " << chi.modulus << " (order " << chi.order
     << ", conductor " << conductor(chi) << ")";
  return os.str();
}

}  // namespace hmf
