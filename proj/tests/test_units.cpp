#include "doctest.h"
#include "support.hpp"

using namespace hmf;
using namespace hmf::testing;

namespace {

// |(O/m)^x| from the factorisation of m: prod N(P)^(e-1) (N(P) - 1).
std::int64_t phi_of_ideal(const FieldOrder& K, const Ideal& m, std::int64_t N) {
  std::int64_t out = 1;
  for (auto [l, ignored] : factor(N))
    for (const auto& P : primes_above(K, l)) {
      int v = valuation(K, P, m);
      if (v == 0) continue;
      std::int64_t q = ipow(l, P.f);
      out *= ipow(q, v - 1) * (q - 1);
    }
  return out;
}

}  // namespace

TEST_CASE("residue rings: size, unit count and ring laws") {
  struct Case {
    const char* field;
    std::vector<long> gen;
  };
  for (const Case& c : {Case{"Q", {12}}, Case{"Q5", {6, 0}}, Case{"Q5", {2, 1}}, Case{"z9", {9, 0, 0}},
                        Case{"z9", {-1, 1, 0}}, Case{"z7", {7, 0, 0}}}) {
    auto K = field(c.field);
    QVector g(K->n);
    for (int i = 0; i < K->n; ++i) g(i) = Rational(c.gen[static_cast<std::size_t>(i)]);
    Ideal m = principal_ideal(*K, g);
    ResidueRing R(K, m);
    const std::int64_t N = to_i64(ideal_norm(m).get_num());
    CHECK(R.size() == N);
    CHECK(static_cast<std::int64_t>(R.units().size()) == phi_of_ideal(*K, m, N));
    for (std::int64_t a = 0; a < R.size(); a += 1 + R.size() / 40) {
      CHECK(R.index(R.element(a)) == a);
      CHECK(R.mul(a, R.one()) == a);
      CHECK(R.add(a, R.neg(a)) == R.zero());
      if (R.is_unit(a)) CHECK(R.mul(a, R.inverse(a)) == R.one());
      // reduction is compatible with the ideal
      IVector x = R.element(a);
      IVector shifted = x + to_int(mul(*K, g, from_int<Rational>(*K, 3)));
      CHECK(R.index(shifted) == a);
    }
    auto gens = unit_group_generators(R);
    CHECK(subgroup_closure(R, gens) == R.units());
  }
}

TEST_CASE("unit residues carry consistent norm signs") {
  auto K = field("z9");
  auto U = field_units("z9");
  ResidueRing R(K, principal_ideal(*K, from_int<Rational>(*K, 9)));
  auto ur = unit_residues(R, U);
  CHECK(ur.consistent);
  CHECK(std::find(ur.elems.begin(), ur.elems.end(), R.one()) != ur.elems.end());
  CHECK(std::find(ur.elems.begin(), ur.elems.end(), R.from_int(-1)) != ur.elems.end());
  for (std::size_t i = 0; i < ur.elems.size(); ++i) CHECK(R.is_unit(ur.elems[i]));
}

TEST_CASE("unit sign groups") {
  // Q(sqrt 5): the fundamental unit has norm -1, so all four sign patterns occur
  CHECK(unit_sign_group(*field("Q5"), field_units("Q5")).size() == 4);
  // Q(zeta_9)^+ has units of every sign pattern (narrow class number 1)
  CHECK(unit_sign_group(*field("z9"), field_units("z9")).size() == 8);
  auto K3 = std::make_shared<const FieldOrder>(order_from_min_poly("Q3", {-3, 0, 1}));
  auto U3 = units_from_preset(*K3, {qv({2, 1})});
  CHECK(unit_sign_group(*K3, U3).size() == 2);
}

TEST_CASE("orbit ball meets every unit orbit") {
  std::mt19937_64 rng(17);
  for (const char* name : {"Q5", "z9", "z7"}) {
    auto K = field(name);
    auto U = field_units(name);
    for (int i = 0; i < 30; ++i) {
      QVector x = random_element(rng, K->n, 25);
      if (x.isZero()) continue;
      Rational r = orbit_ball_t2(*K, U, abs(norm(*K, x)));
      // walk x towards the ball with the unit generators and their inverses
      QVector y = x;
      for (int step = 0; step < 200 && t2(*K, y) > r; ++step) {
        QVector best = y;
        for (const auto& u : U.fundamental)
          for (const QVector& v : {u, inverse(*K, u)}) {
            QVector z = mul(*K, y, v);
            if (t2(*K, z) < t2(*K, best)) best = z;
          }
        if (best == y) break;
        y = best;
      }
      CHECK(t2(*K, y) <= r);
    }
  }
}
