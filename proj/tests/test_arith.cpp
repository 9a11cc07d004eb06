#include "doctest.h"
#include "hmf/cyclotomic.hpp"
#include "hmf/matrix.hpp"
#include "hmf/poly.hpp"

#include <numeric>
#include <random>

using namespace hmf;

TEST_CASE("integer helpers agree with naive versions") {
  for (std::int64_t a = -30; a <= 30; ++a)
    for (std::int64_t m = 1; m <= 17; ++m) {
      CHECK(mod(a, m) == ((a % m) + m) % m);
      CHECK(floor_div(a, m) * m + mod(a, m) == a);
      CHECK(gcd64(a, m) == std::gcd(a, m));
    }
  for (std::int64_t m = 2; m <= 40; ++m)
    for (std::int64_t a = 1; a < m; ++a) {
      std::int64_t naive = 1;
      for (int e = 0; e < 13; ++e) naive = naive * a % m;
      CHECK(powmod(a, 13, m) == naive);
      if (std::gcd(a, m) == 1) CHECK(a * invmod(a, m) % m == 1);
    }
  CHECK_THROWS_AS(invmod(6, 9), MathError);
}

TEST_CASE("overflow is detected") {
  CHECK_THROWS_AS(checked_mul(std::int64_t(1) << 40, std::int64_t(1) << 40), OverflowError);
  CHECK_THROWS_AS(checked_add(INT64_MAX, 1), OverflowError);
  CHECK_THROWS_AS(ipow(10, 19), OverflowError);
  CHECK(ipow(3, 20) == 3486784401LL);
}

TEST_CASE("primes and factorisation") {
  std::vector<bool> sieve(500, true);
  sieve[0] = sieve[1] = false;
  for (int i = 2; i * i < 500; ++i)
    if (sieve[i])
      for (int j = i * i; j < 500; j += i) sieve[j] = false;
  auto ps = primes_up_to(499);
  std::vector<std::int64_t> expect;
  for (int i = 0; i < 500; ++i)
    if (sieve[i]) expect.push_back(i);
  CHECK(ps == expect);
  for (std::int64_t n = 1; n < 500; ++n) {
    CHECK(is_prime(n) == sieve[static_cast<std::size_t>(n)]);
    std::int64_t back = 1;
    for (auto [p, e] : factor(n)) {
      CHECK(is_prime(p));
      back *= ipow(p, e);
    }
    CHECK(back == n);
  }
  CHECK(valuation(BigInt(3 * 3 * 3 * 5), 3) == 3);
  CHECK(valuation(Rational(2, 27), 3) == -3);
}

TEST_CASE("extended gcd") {
  BigInt s, t;
  BigInt g = xgcd(BigInt(240), BigInt(-46), s, t);
  CHECK(g == 2);
  CHECK(s * 240 + t * -46 == g);
}

TEST_CASE("HNF is canonical and idempotent") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-20, 20);
  for (int trial = 0; trial < 50; ++trial) {
    ZMatrix g(3, 5);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 5; ++j) g(i, j) = d(rng);
    if (rank(to_qmatrix(g)) < 3) continue;
    ZMatrix h = hnf(g);
    CHECK(hnf(h) == h);
    // a unimodular change of generators leaves the HNF alone
    ZMatrix g2 = g;
    g2.col(0) += 3 * g.col(1);
    g2.col(2).swap(g2.col(4));
    CHECK(hnf(g2) == h);
    for (int i = 0; i < 3; ++i) {
      CHECK(h(i, i) > 0);
      for (int j = i + 1; j < 3; ++j) CHECK((h(i, j) >= 0 && h(i, j) < h(i, i)));
    }
    // index of the lattice
    CHECK(abs(det(ZMatrix(h))) == h(0, 0) * h(1, 1) * h(2, 2));
  }
}

TEST_CASE("Smith normal form of small matrices") {
  ZMatrix m(2, 2);
  m << 2, 4, 6, 8;
  auto s = smith(m);
  REQUIRE(s.divisors.size() == 2);
  CHECK(s.divisors[0] == 2);
  CHECK(s.divisors[1] == 4);
  ZMatrix r(3, 3);
  r << 6, 0, 0, 0, 10, 0, 0, 0, 15;
  auto s2 = smith(r);
  REQUIRE(s2.divisors.size() == 3);
  CHECK(s2.divisors[0] == 1);
  CHECK(s2.divisors[1] == 30);
  CHECK(s2.divisors[2] == 30);
  ZMatrix z(1, 2);
  z << 4, 0;
  auto s3 = smith(z);
  CHECK(s3.free_rank == 1);
}

TEST_CASE("cyclotomic arithmetic") {
  for (std::int64_t m : {1, 2, 3, 4, 5, 7, 9, 12, 15}) {
    auto z = CycInt::zeta(m, 1);
    CycInt acc = CycInt::constant(m, 1);
    CycInt sum(m);
    for (std::int64_t i = 0; i < m; ++i) {
      sum += acc;
      acc *= z;
    }
    CHECK(acc == CycInt::constant(m, 1));
    if (m > 1) CHECK(sum.is_zero());
    CHECK((z * z.conj()) == CycInt::constant(m, 1));
  }
  // sqrt(-3) = 1 + 2 zeta_3, and lifting to zeta_12 keeps equality
  auto s = CycInt::constant(3, 1) + BigInt(2) * CycInt::zeta(3, 1);
  CHECK((s * s) == CycInt::constant(3, -3));
  CHECK(s.lift(12) == s);
  CHECK(CycInt::zeta(4, 1).galois(3) == CycInt::zeta(4, 3));
}

TEST_CASE("polynomials") {
  QPoly f = QPoly::from_ints({-2, 0, 1});
  auto roots = real_roots(f, 64);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].lo * roots[0].lo <= 2);
  CHECK(roots[0].hi * roots[0].hi >= 2);
  CHECK(roots[0].lo > 0);
  QPoly g = f * f;
  CHECK(squarefree_part(g) == f);
  QPoly q, r;
  divmod(g, f, q, r);
  CHECK(q == f);
  CHECK(r.is_zero());
}
