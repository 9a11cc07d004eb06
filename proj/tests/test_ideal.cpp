#include "doctest.h"
#include "support.hpp"

using namespace hmf;
using namespace hmf::testing;

TEST_CASE("ideal arithmetic on random principal ideals") {
  std::mt19937_64 rng(11);
  for (const char* name : {"Q5", "z9", "z7"}) {
    auto K = field(name);
    for (int i = 0; i < 25; ++i) {
      QVector a = random_element(rng, K->n, 6), b = random_element(rng, K->n, 6);
      if (a.isZero() || b.isZero()) continue;
      Ideal A = principal_ideal(*K, a), B = principal_ideal(*K, b);
      CHECK(ideal_norm(A) == abs(norm(*K, a)));
      Ideal AB = ideal_mul(*K, A, B);
      CHECK(AB == principal_ideal(*K, mul(*K, a, b)));
      CHECK(ideal_norm(AB) == ideal_norm(A) * ideal_norm(B));
      // canonical form is a fixed point
      CHECK(ideal_from_lattice(ideal_basis(A)) == A);
      CHECK(ideal_mul(*K, A, ideal_inverse(*K, A)) == unit_ideal(*K));
      CHECK(ideal_subset(AB, A));
      Ideal S = ideal_add(*K, A, B), M = ideal_intersect(*K, A, B);
      CHECK(ideal_subset(A, S));
      CHECK(ideal_subset(M, B));
      // N(A + B) N(A cap B) = N(A) N(B) for integral ideals of a Dedekind domain
      CHECK(ideal_norm(S) * ideal_norm(M) == ideal_norm(A) * ideal_norm(B));
      CHECK(ideal_contains(A, mul(*K, a, b)));
      CHECK(is_module(*K, A));
    }
  }
}

TEST_CASE("prime decomposition satisfies sum e f = n") {
  for (const char* name : {"Q5", "z9", "z7"}) {
    auto K = field(name);
    for (std::int64_t l : primes_up_to(60)) {
      auto ps = primes_above(*K, l);
      int sum = 0;
      Ideal prod = unit_ideal(*K);
      for (const auto& P : ps) {
        sum += P.e * P.f;
        CHECK(ideal_norm(P.ideal) == Rational(static_cast<long>(ipow(l, P.f))));
        prod = ideal_mul(*K, prod, ideal_pow(*K, P.ideal, P.e));
        CHECK(valuation(*K, P, from_int<Rational>(*K, l)) == P.e);
      }
      CHECK(sum == K->n);
      CHECK(prod == principal_ideal(*K, from_int<Rational>(*K, l)));
    }
  }
  // 3 is totally ramified in Q(zeta_9)^+, 7 in Q(zeta_7)^+
  auto p3 = primes_above(*field("z9"), 3);
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].e == 3);
  auto p7 = primes_above(*field("z7"), 7);
  REQUIRE(p7.size() == 1);
  CHECK(p7[0].e == 3);
  // 2 is inert in Q(zeta_9)^+ (2 has order 6 mod 9)
  auto p2 = primes_above(*field("z9"), 2);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].f == 3);
}

TEST_CASE("the different has norm equal to the discriminant") {
  for (const char* name : {"Q", "Q5", "z9", "z7"}) {
    auto K = field(name);
    Ideal D = different(*K);
    CHECK(ideal_norm(D) == Rational(K->discriminant));
    CHECK(is_integral(D));
  }
}

TEST_CASE("Fincke-Pohst agrees with a box scan") {
  IMatrix G(2, 2);
  G << 2, 1, 1, 3;
  for (long bound : {0L, 1L, 5L, 17L}) {
    std::int64_t found = fincke_pohst(G, BigInt(bound), [&](const IVector& v, const BigInt& val) {
      CHECK(val == 2 * v(0) * v(0) + 2 * v(0) * v(1) + 3 * v(1) * v(1));
      CHECK(val <= bound);
      return true;
    });
    std::int64_t naive = 0;
    for (long x = -20; x <= 20; ++x)
      for (long y = -20; y <= 20; ++y)
        if (2 * x * x + 2 * x * y + 3 * y * y <= bound) ++naive;
    CHECK(found == naive);
  }
}

TEST_CASE("principal generators are found for principal ideals") {
  auto K = field("z9");
  auto U = field_units("z9");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    QVector a = random_element(rng, 3, 4);
    if (a.isZero()) continue;
    Ideal A = principal_ideal(*K, a);
    auto r = principal_generator(*K, U, A);
    REQUIRE(r.status == Principality::principal);
    CHECK(principal_ideal(*K, r.generator) == A);
  }
}
