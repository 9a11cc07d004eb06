#include "hmf/classgroups.hpp"

#include "hmf/lattice.hpp"
#include "hmf/matrix.hpp"
#include "hmf/residue.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace hmf {

BigInt FinAbGroup::order() const {
  BigInt r = 1;
  for (const auto& d : divisors) r *= d;
  return r;
}

std::string FinAbGroup::to_string() const {
  if (status == GroupStatus::inconclusive) return "inconclusive(cap=" + std::to_string(cap) + ")";
  if (divisors.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < divisors.size(); ++i) os << (i ? " x " : "") << "Z/" << divisors[i].get_str();
  return os.str();
}

bool splits_in_quadratic(std::int64_t d0, std::int64_t p) {
  const std::int64_t D = quadratic_discriminant(d0);
  if (p == 2) return ((D % 8) + 8) % 8 == 1;
  return D % p != 0 && mpz_legendre(BigInt(static_cast<long>(D)).get_mpz_t(), BigInt(static_cast<long>(p)).get_mpz_t()) == 1;
}

std::string to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::holds: return "holds";
    case Hypothesis::fails: return "fails";
    default: return "inconclusive";
  }
}

std::int64_t minkowski_bound(const FieldOrder& K) {
  double v = 1;
  for (int i = 1; i <= K.n; ++i) v *= static_cast<double>(i) / K.n;
  v *= std::sqrt(std::fabs(K.discriminant.get_d()));
  return static_cast<std::int64_t>(std::ceil(v * (1 + 1e-12)));
}

namespace {

struct Inconclusive {
  std::string why;
};

using Label = std::pair<int, std::int64_t>;  // (class representative, local quotient element)

/// Finite quotient attached to the modulus: (O/J)^x / H, or sign vectors
/// modulo unit signs. Elements are dense ids, 0 is the identity.
struct LocalQuotient {
  std::int64_t size = 1;
  std::function<std::int64_t(std::int64_t, std::int64_t)> mul = [](std::int64_t, std::int64_t) { return 0; };
  std::function<std::int64_t(const QVector&)> of = [](const QVector&) { return 0; };
  std::vector<std::string> names{"1"};
};

struct ResidueQuotient {
  std::shared_ptr<ResidueRing> R;
  std::vector<std::int32_t> coset;
  std::vector<std::int64_t> rep;
  std::int64_t unit_residues = 0;
  std::int64_t h_size = 0;
};

ResidueQuotient residue_quotient(std::shared_ptr<ResidueRing> R, const std::vector<std::int64_t>& hgens) {
  ResidueQuotient Q;
  Q.R = R;
  auto H = subgroup_closure(*R, hgens);
  Q.h_size = static_cast<std::int64_t>(H.size());
  Q.coset.assign(static_cast<std::size_t>(R->size()), -1);
  // identity coset first
  std::vector<std::int64_t> order{R->one()};
  for (std::int64_t i = 0; i < R->size(); ++i)
    if (i != R->one()) order.push_back(i);
  for (std::int64_t u : order) {
    if (Q.coset[u] >= 0 || !R->is_unit(u)) continue;
    const auto c = static_cast<std::int32_t>(Q.rep.size());
    Q.rep.push_back(u);
    for (std::int64_t h : H) Q.coset[R->mul(u, h)] = c;
  }
  for (auto c : Q.coset) Q.unit_residues += c >= 0;
  return Q;
}

LocalQuotient as_local(std::shared_ptr<ResidueQuotient> Q) {
  LocalQuotient L;
  L.size = static_cast<std::int64_t>(Q->rep.size());
  L.mul = [Q](std::int64_t a, std::int64_t b) { return static_cast<std::int64_t>(Q->coset[Q->R->mul(Q->rep[a], Q->rep[b])]); };
  L.of = [Q](const QVector& h) {
    auto c = Q->coset[Q->R->index(to_int(h))];
    if (c < 0) throw MathError("ray class: generator not prime to the modulus");
    return static_cast<std::int64_t>(c);
  };
  L.names.clear();
  for (auto r : Q->rep) L.names.push_back("res[" + std::to_string(r) + "]");
  return L;
}

LocalQuotient sign_quotient(const FieldOrder& K, const UnitGroupData& U) {
  auto S = unit_sign_group(K, U);
  const unsigned full = 1u << K.n;
  std::vector<std::int64_t> id(full, -1);
  std::vector<unsigned> rep;
  for (unsigned m = 0; m < full; ++m) {
    if (id[m] >= 0) continue;
    for (unsigned s : S) id[m ^ s] = static_cast<std::int64_t>(rep.size());
    rep.push_back(m);
  }
  LocalQuotient L;
  L.size = static_cast<std::int64_t>(rep.size());
  L.mul = [id, rep](std::int64_t a, std::int64_t b) { return id[rep[a] ^ rep[b]]; };
  L.of = [&K, id](const QVector& h) { return id[sign_mask(sign_vector(K, h))]; };
  L.names.clear();
  for (unsigned m : rep) L.names.push_back("sign[" + std::to_string(m) + "]");
  return L;
}

struct Move {
  std::string name;
  std::optional<Ideal> ideal;
  std::int64_t q = 0;
};

/// Classes of ideals prime to the modulus, labelled by a representative R_i
/// and the local class of h with A = R_i (h / N(R_i)).
struct Engine {
  const FieldOrder* K = nullptr;
  std::function<GeneratorSearch(const Ideal&)> principal;
  LocalQuotient Q;
  std::vector<Ideal> reps, co;
  std::vector<BigInt> rep_norm;
  bool unsure = false;
  std::int64_t searches = 0;

  void add_rep(const Ideal& A) {
    Rational N = ideal_norm(A);
    reps.push_back(A);
    rep_norm.push_back(BigInt(N.get_num()));
    co.push_back(ideal_scale(ideal_inverse(*K, A), N));
  }

  std::optional<Label> classify(const Ideal& A) {
    bool undecided = false;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      ++searches;
      auto g = principal(ideal_mul(*K, A, co[i]));
      if (g.status == Principality::principal) return Label{static_cast<int>(i), Q.of(g.generator)};
      if (g.status == Principality::inconclusive) undecided = true;
    }
    if (undecided) unsure = true;
    return std::nullopt;
  }

  Label step(const Label& x, const Move& m, bool discover) {
    if (!m.ideal) return {x.first, Q.mul(x.second, m.q)};
    Ideal A = ideal_mul(*K, reps[x.first], *m.ideal);
    auto c = classify(A);
    if (!c) {
      if (unsure) throw Inconclusive{"principality search hit the cap"};
      if (!discover) throw MathError("class enumeration: unseen class");
      add_rep(A);
      return {static_cast<int>(reps.size()) - 1, x.second};
    }
    return {c->first, Q.mul(x.second, c->second)};
  }

  Label mul(const Label& a, const Label& b) {
    auto c = classify(ideal_mul(*K, reps[a.first], reps[b.first]));
    if (!c) throw Inconclusive{unsure ? "principality search hit the cap" : "product class not enumerated"};
    return {c->first, Q.mul(Q.mul(a.second, b.second), c->second)};
  }
};

struct Enumeration {
  std::vector<Move> moves;
  std::vector<Label> elems;
  std::map<Label, std::size_t> index;
  std::vector<std::vector<std::int64_t>> exps;
  std::set<std::vector<std::int64_t>> rels;
};

void close(Engine& E, Enumeration& G, bool discover, std::size_t max_elems = 2'000'000) {
  G.elems.clear();
  G.index.clear();
  G.exps.clear();
  G.rels.clear();
  const std::size_t g = G.moves.size();
  Label start{0, 0};
  G.elems.push_back(start);
  G.index[start] = 0;
  G.exps.emplace_back(g, 0);
  for (std::size_t at = 0; at < G.elems.size(); ++at)
    for (std::size_t k = 0; k < g; ++k) {
      Label y = E.step(G.elems[at], G.moves[k], discover);
      auto v = G.exps[at];
      v[k] += 1;
      auto it = G.index.find(y);
      if (it == G.index.end()) {
        if (G.elems.size() >= max_elems) throw Inconclusive{"group larger than the enumeration limit"};
        G.index[y] = G.elems.size();
        G.elems.push_back(y);
        G.exps.push_back(v);
      } else {
        for (std::size_t i = 0; i < g; ++i) v[i] -= G.exps[it->second][i];
        if (std::any_of(v.begin(), v.end(), [](std::int64_t z) { return z != 0; })) G.rels.insert(v);
      }
    }
}

FinAbGroup structure(const Enumeration& G, std::int64_t cap) {
  FinAbGroup A;
  A.cap = cap;
  for (const auto& m : G.moves) A.generators.push_back(m.name);
  if (!G.moves.empty()) {
    ZMatrix rel(static_cast<Eigen::Index>(G.rels.size()), static_cast<Eigen::Index>(G.moves.size()));
    Eigen::Index r = 0;
    for (const auto& v : G.rels) {
      for (std::size_t j = 0; j < v.size(); ++j) rel(r, static_cast<Eigen::Index>(j)) = BigInt(static_cast<long>(v[j]));
      ++r;
    }
    auto S = smith(rel);
    if (S.free_rank != 0) throw MathError("class enumeration: relations do not have full rank");
    for (const auto& d : S.divisors)
      if (d > 1) A.divisors.push_back(d);
  }
  if (A.order() != static_cast<long>(G.elems.size()))
    throw MathError("class enumeration: Smith form disagrees with the element count");
  A.relations = ZMatrix::Zero(static_cast<Eigen::Index>(A.divisors.size()), static_cast<Eigen::Index>(A.divisors.size()));
  for (std::size_t i = 0; i < A.divisors.size(); ++i) A.relations(i, i) = A.divisors[i];
  return A;
}

FinAbGroup inconclusive_group(std::int64_t cap, const std::string& why) {
  FinAbGroup A;
  A.status = GroupStatus::inconclusive;
  A.cap = cap;
  A.note = why;
  return A;
}

std::vector<std::int64_t> primes_up_to(std::int64_t B) {
  std::vector<std::int64_t> out;
  for (std::int64_t l = 2; l <= B; ++l)
    if (is_prime(l)) out.push_back(l);
  return out;
}

std::vector<std::int64_t> prime_divisors(BigInt n) {
  std::vector<std::int64_t> out;
  if (n < 0) n = -n;
  for (long l = 2; BigInt(l) * l <= n; ++l)
    if (n % l == 0) {
      out.push_back(l);
      while (n % l == 0) n /= l;
    }
  if (n > 1) out.push_back(n.get_si());
  return out;
}

BigInt pow_int(std::int64_t l, int f) {
  BigInt r = 1;
  for (int i = 0; i < f; ++i) r *= static_cast<long>(l);
  return r;
}

std::string prime_name(const PrimeIdeal& P) { return "P(" + std::to_string(P.p) + "," + format_element(P.gen2) + ")"; }

Engine real_engine(const FieldOrder& K, const UnitGroupData& U, std::int64_t cap) {
  Engine E;
  E.K = &K;
  E.principal = [&K, &U, cap](const Ideal& I) { return principal_generator(K, U, I, cap); };
  E.add_rep(unit_ideal(K));
  return E;
}

Engine cm_engine(const CMQuadExt& cm, std::int64_t cap) {
  Engine E;
  E.K = cm.order.get();
  E.principal = [&cm, cap](const Ideal& I) {
    const FieldOrder& K = *cm.order;
    return search_generator(K, I, cm.t2_gram, cm_orbit_ball(cm, ideal_norm(I)), cap);
  };
  E.add_rep(unit_ideal(*cm.order));
  return E;
}

struct Computed {
  Engine E;
  Enumeration G;
  FinAbGroup A;
};

/// Enumerate with every prime of norm <= B as a generator, plus local moves.
Computed run_full(Engine E, std::vector<Move> primes, const std::vector<Move>& local, std::int64_t cap) {
  Computed c{std::move(E), {}, {}};
  c.G.moves = std::move(primes);
  for (const auto& m : local) c.G.moves.push_back(m);
  try {
    close(c.E, c.G, true);
    c.A = structure(c.G, cap);
  } catch (const Inconclusive& e) {
    c.A = inconclusive_group(cap, e.why);
  }
  return c;
}

std::vector<Move> real_prime_moves(const FieldOrder& K, std::int64_t B) {
  std::vector<Move> out;
  for (auto l : primes_up_to(B))
    for (const auto& P : primes_above(K, l))
      if (pow_int(l, P.f) <= B) out.push_back({prime_name(P), P.ideal, 0});
  return out;
}

std::vector<Move> cm_prime_moves(const CMQuadExt& cm, std::int64_t B) {
  std::vector<Move> out;
  for (auto l : primes_up_to(B))
    for (const auto& P : cm_primes_above(cm, l))
      if (pow_int(l, P.f) <= B) out.push_back({prime_name(P), P.ideal, 0});
  return out;
}

/// Local moves: a greedy generating set of the quotient.
std::vector<Move> local_moves(const LocalQuotient& Q) {
  std::vector<Move> out;
  std::vector<char> in(static_cast<std::size_t>(Q.size), 0);
  std::vector<std::int64_t> sub{0};
  in[0] = 1;
  for (std::int64_t c = 1; c < Q.size; ++c) {
    if (in[c]) continue;
    out.push_back({Q.names[c], std::nullopt, c});
    for (std::size_t i = 0; i < sub.size(); ++i) {
      std::int64_t y = Q.mul(sub[i], c);
      if (!in[y]) {
        in[y] = 1;
        sub.push_back(y);
      }
      for (const auto& m : out) {
        std::int64_t z = Q.mul(sub[i], m.q);
        if (!in[z]) {
          in[z] = 1;
          sub.push_back(z);
        }
      }
    }
  }
  return out;
}

Computed cm_class_computed(const CMQuadExt& cm, const ClassGroupOptions& opt) {
  const std::int64_t B = std::max(cm_minkowski_bound(cm), opt.prime_bound);
  return run_full(cm_engine(cm, opt.cap), cm_prime_moves(cm, B), {}, opt.cap);
}

Computed real_class_computed(const FieldOrder& K, const UnitGroupData& U, const ClassGroupOptions& opt) {
  const std::int64_t B = std::max(minkowski_bound(K), opt.prime_bound);
  return run_full(real_engine(K, U, opt.cap), real_prime_moves(K, B), {}, opt.cap);
}

/// The minus ray class data for K = cm.order and J = j O_K.
struct RayMinus {
  std::shared_ptr<ResidueQuotient> RQ;
  Computed c;
  BigInt class_number = 0;
};

std::shared_ptr<ResidueQuotient> minus_quotient(const CMQuadExt& cm, const Ideal& j_base, const ClassGroupOptions& opt) {
  const FieldOrder& F = *cm.base;
  const Ideal J = cm_extend(cm, j_base);
  const BigInt NJ = BigInt(ideal_norm(J).get_num());
  if (NJ == 1) return nullptr;
  if (NJ > opt.max_ring) throw Inconclusive{"residue ring O/J larger than max_ring"};
  std::vector<PrimeIdeal> ps, bps;
  for (auto l : prime_divisors(NJ)) {
    for (const auto& P : cm_primes_above(cm, l))
      if (ideal_subset(J, P.ideal)) ps.push_back(P);
    for (const auto& P : primes_above(F, l))
      if (ideal_subset(j_base, P.ideal)) bps.push_back(P);
  }
  auto R = std::make_shared<ResidueRing>(cm.order, J, ps);
  ResidueRing Rb(cm.base, j_base, bps);
  std::vector<std::int64_t> hg;
  auto add = [&](const QVector& x) { hg.push_back(R->index(to_int(x))); };
  for (const auto& z : cm.torsion) add(z);
  for (const auto& u : cm.unit_gens) add(u);
  for (const auto& u : cm.base_units.fundamental) add(cm_embed_base(cm, u));
  for (auto g : unit_group_generators(Rb)) add(cm_embed_base(cm, to_q(Rb.element(g))));
  return std::make_shared<ResidueQuotient>(residue_quotient(R, hg));
}

RayMinus ray_minus_computed(const CMQuadExt& cm, const Ideal& j_base, const ClassGroupOptions& opt) {
  RayMinus out;
  auto cl = cm_class_computed(cm, opt);
  if (cl.A.status != GroupStatus::exact) {
    out.c.A = inconclusive_group(opt.cap, "class group of K inconclusive: " + cl.A.note);
    return out;
  }
  out.class_number = cl.A.order();
  try {
    out.RQ = minus_quotient(cm, j_base, opt);
  } catch (const Inconclusive& e) {
    out.c.A = inconclusive_group(opt.cap, e.why);
    return out;
  }
  Engine E = cm_engine(cm, opt.cap);
  if (out.RQ) E.Q = as_local(out.RQ);
  const BigInt NJ = BigInt(ideal_norm(cm_extend(cm, j_base)).get_num());
  std::vector<Move> primes;
  // primes prime to N(J), added until every ideal class is reached
  try {
    Enumeration G;
    auto local = local_moves(E.Q);
    std::int64_t l = 1;
    const std::int64_t lmax = std::max<std::int64_t>(1000, 20 * cm_minkowski_bound(cm));
    while (true) {
      G.moves = primes;
      for (const auto& m : local) G.moves.push_back(m);
      close(E, G, true);
      if (static_cast<long>(E.reps.size()) >= out.class_number) break;
      bool added = false;
      while (!added) {
        l = l + 1;
        if (l > lmax) throw Inconclusive{"no prime generators for every class below the search limit"};
        if (!is_prime(l) || NJ % l == 0) continue;
        for (const auto& P : cm_primes_above(cm, l)) {
          auto c = E.classify(P.ideal);
          if (E.unsure) throw Inconclusive{"principality search hit the cap"};
          if (!c) {
            primes.push_back({prime_name(P), P.ideal, 0});
            added = true;
            break;
          }
        }
      }
    }
    if (static_cast<long>(E.reps.size()) != out.class_number)
      throw MathError("ray class enumeration found more ideal classes than the class group");
    out.c.E = std::move(E);
    out.c.G = std::move(G);
    out.c.A = structure(out.c.G, opt.cap);
  } catch (const Inconclusive& e) {
    out.c.A = inconclusive_group(opt.cap, e.why);
  }
  return out;
}

}  // namespace

FinAbGroup class_group(const FieldOrder& K, const UnitGroupData& U, const ClassGroupOptions& opt) {
  return real_class_computed(K, U, opt).A;
}

FinAbGroup class_group(const CMQuadExt& cm, const ClassGroupOptions& opt) { return cm_class_computed(cm, opt).A; }

FinAbGroup narrow_class_group(const FieldOrder& K, const UnitGroupData& U, const ClassGroupOptions& opt) {
  if (!K.totally_real) throw MathError("narrow_class_group: order is not totally real");
  const std::int64_t B = std::max(minkowski_bound(K), opt.prime_bound);
  Engine E = real_engine(K, U, opt.cap);
  E.Q = sign_quotient(K, U);
  auto local = local_moves(E.Q);
  return run_full(std::move(E), real_prime_moves(K, B), local, opt.cap).A;
}

FinAbGroup ray_class_minus(const CMQuadExt& cm, const Ideal& j_base, const ClassGroupOptions& opt) {
  return ray_minus_computed(cm, j_base, opt).c.A;
}

std::optional<BigInt> ray_minus_order_formula(const CMQuadExt& cm, const Ideal& j_base, const ClassGroupOptions& opt) {
  auto cl = class_group(cm, opt);
  if (cl.status != GroupStatus::exact) return std::nullopt;
  try {
    auto Q = minus_quotient(cm, j_base, opt);
    if (!Q) return cl.order();
    return cl.order() * Q->unit_residues / Q->h_size;
  } catch (const Inconclusive&) {
    return std::nullopt;
  }
}

Ideal j_ideal(const CMQuadExt& cm, const Ideal& n, const Ideal& f) {
  const FieldOrder& F = *cm.base;
  const FieldOrder& K = *cm.order;
  if (!is_integral(n) || !is_integral(f)) throw MathError("j_ideal: n and f must be integral");
  Ideal nf = ideal_mul(K, cm_extend(cm, n), f);
  Ideal j = unit_ideal(F);
  for (auto l : prime_divisors(BigInt(ideal_norm(nf).get_num()))) {
    auto above = cm_primes_above(cm, l);
    for (const auto& q : primes_above(F, l)) {
      Ideal qK = cm_extend(cm, q.ideal);
      std::vector<PrimeIdeal> over;
      for (const auto& P : above)
        if (ideal_subset(qK, P.ideal)) over.push_back(P);
      if (over.size() != 1) continue;  // split in K
      const int e = over[0].e / q.e;
      const int v = valuation(K, over[0], nf);
      const int ex = (v + e - 1) / e;
      if (ex > 0) j = ideal_mul(F, j, ideal_pow(F, q.ideal, ex));
    }
  }
  return j;
}

QVector cm_tower_embed(const CMQuadExt& cm, const CMQuadExt& cm2, const TowerData& t, const QVector& x) {
  const int n = cm.base->n, n2 = cm2.base->n;
  QVector r(2 * n2);
  r.head(n2) = embed(t, QVector(x.head(n)));
  r.tail(n2) = embed(t, QVector(x.tail(n)));
  return r;
}

namespace {

Ideal cm_tower_extend(const CMQuadExt& cm, const CMQuadExt& cm2, const TowerData& t, const Ideal& I) {
  std::vector<QVector> gens;
  for (const auto& b : ideal_basis_vectors(I)) gens.push_back(cm_tower_embed(cm, cm2, t, b));
  return ideal_from_generators(*cm2.order, gens);
}

bool splits_in_k(const CMQuadExt& cm, const PrimeIdeal& q) {
  Ideal qK = cm_extend(cm, q.ideal);
  int over = 0;
  for (const auto& P : cm_primes_above(cm, q.p))
    if (ideal_subset(qK, P.ideal)) ++over;
  return over == 2;
}

}  // namespace

AssumptionReport check_main_assumptions(const TowerData& t, const CMQuadExt& cm, const CMQuadExt& cm2,
                                        const Ideal& n, const Ideal& f, const ClassGroupOptions& opt) {
  if (cm.d0 != cm2.d0 || cm.omega_trace != cm2.omega_trace || cm.omega_norm != cm2.omega_norm)
    throw MathError("check_main_assumptions: K and K' must share d0");
  if (cm.base->n != t.base->n || cm2.base->n != t.top->n)
    throw MathError("check_main_assumptions: CM data does not sit over the tower");
  AssumptionReport rep;

  // side conditions
  {
    rep.p_splits_in_k0 = splits_in_quadratic(cm.d0, t.p);
    if (!rep.p_splits_in_k0) rep.notes.push_back("p does not split in K0");
    rep.ramified_split_in_k = true;
    for (auto l : prime_divisors(BigInt(ideal_norm(t.rel_different).get_num())))
      for (const auto& q : primes_above(*t.base, l)) {
        Ideal qt = extend_ideal(t, q.ideal);
        if (ideal_add(*t.top, qt, t.rel_different) == unit_ideal(*t.top)) continue;
        if (!splits_in_k(cm, q)) {
          rep.ramified_split_in_k = false;
          rep.notes.push_back("ramified prime over " + std::to_string(l) + " does not split in K");
        }
      }
  }

  // h3
  rep.h3 = t.xi ? Hypothesis::holds : Hypothesis::fails;

  // h2
  auto cf = real_class_computed(*t.base, t.base_units, opt);
  auto ct = real_class_computed(*t.top, t.top_units, opt);
  rep.cl_base = cf.A;
  rep.cl_top = ct.A;
  if (cf.A.status == GroupStatus::exact && ct.A.status == GroupStatus::exact) {
    try {
      std::set<int> images;
      for (const auto& R : cf.E.reps) {
        auto c = ct.E.classify(extend_ideal(t, R));
        if (!c) throw Inconclusive{"image class not enumerated"};
        images.insert(c->first);
      }
      rep.h2 = images.size() == cf.E.reps.size() ? Hypothesis::holds : Hypothesis::fails;
    } catch (const Inconclusive& e) {
      rep.notes.push_back("h2: " + e.why);
    }
  } else {
    rep.notes.push_back("h2: class group inconclusive");
  }

  // h1
  rep.j = j_ideal(cm, n, f);
  auto mb = ray_minus_computed(cm, rep.j, opt);
  auto mt = ray_minus_computed(cm2, extend_ideal(t, rep.j), opt);
  rep.minus_base = mb.c.A;
  rep.minus_top = mt.c.A;
  if (mb.c.A.status != GroupStatus::exact || mt.c.A.status != GroupStatus::exact) {
    rep.notes.push_back("h1: minus ray class group inconclusive");
    return rep;
  }
  try {
    Engine& E2 = mt.c.E;
    auto R2 = mt.RQ ? mt.RQ->R : nullptr;
    auto local_label = [&](const IVector& x) -> Label {
      if (!mt.RQ) return {0, 0};
      auto c = mt.RQ->coset[R2->index(x)];
      if (c < 0) throw MathError("h1: residue image is not a unit");
      return {0, c};
    };
    // images of the generators of Cl-_K(J)
    std::vector<Label> imgs;
    for (const auto& m : mb.c.G.moves) {
      if (m.ideal) {
        auto c = E2.classify(cm_tower_extend(cm, cm2, t, *m.ideal));
        if (!c) throw Inconclusive{E2.unsure ? "principality search hit the cap" : "image class not enumerated"};
        imgs.push_back(*c);
      } else {
        IVector x = mb.RQ->R->element(mb.RQ->rep[m.q]);
        imgs.push_back(local_label(to_int(cm_tower_embed(cm, cm2, t, to_q(x)))));
      }
    }
    // Gamma on Cl-_K'(J)
    const IMatrix aut = cm_lift_automorphism(cm2, t.gamma);
    auto gamma = [&](const Label& x) -> Label {
      auto c = E2.classify(apply_automorphism(*cm2.order, aut, E2.reps[x.first]));
      if (!c) throw Inconclusive{"conjugate class not enumerated"};
      Label g{c->first, c->second};
      if (mt.RQ) {
        IVector y = aut * R2->element(mt.RQ->rep[x.second]);
        g.second = E2.Q.mul(g.second, local_label(y).second);
      }
      return g;
    };
    rep.generators_fixed = true;
    for (const auto& x : imgs)
      if (gamma(x) != x) rep.generators_fixed = false;
    std::int64_t fixed = 0;
    for (const auto& x : mt.c.G.elems) fixed += gamma(x) == x;
    rep.fixed_order = fixed;
    // subgroup generated by the images
    std::set<Label> sub{Label{0, 0}};
    std::vector<Label> queue{Label{0, 0}};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (const auto& g : imgs) {
        Label y = E2.mul(queue[i], g);
        if (sub.insert(y).second) queue.push_back(y);
      }
    rep.image_order = static_cast<long>(sub.size());
    const bool injective = rep.image_order == mb.c.A.order();
    const bool onto_fixed = rep.image_order == rep.fixed_order;
    rep.h1 = injective && onto_fixed && rep.generators_fixed ? Hypothesis::holds : Hypothesis::fails;
  } catch (const Inconclusive& e) {
    rep.notes.push_back("h1: " + e.why);
  }
  return rep;
}

}  // namespace hmf
