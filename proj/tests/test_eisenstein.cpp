#include "doctest.h"
#include "support.hpp"

#include <sstream>

using namespace hmf;
using namespace hmf::testing;

namespace {

BigInt sigma(long n, int e) {
  BigInt s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) {
      BigInt t;
      mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(e));
      s += t;
    }
  return s;
}

// sum over integral ideals D | (x) of N(D)^e, from the prime factorisation of (x)
BigInt ideal_sigma(const FieldOrder& K, const QVector& x, int e) {
  const BigInt N = abs(norm(K, x).get_num());
  BigInt total = 1;
  for (auto [l, ignored] : factor(to_i64(N)))
    for (const auto& P : primes_above(K, l)) {
      int v = valuation(K, P, x);
      BigInt q;
      mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(l), static_cast<unsigned long>(P.f * e));
      BigInt s = 0, pw = 1;
      for (int i = 0; i <= v; ++i, pw *= q) s += pw;
      total *= s;
    }
  return total;
}

QExpansion level_one(const char* name, int k, long bound) {
  auto K = field(name);
  auto R = std::make_shared<ResidueRing>(K, unit_ideal(*K));
  auto one = constant_fn(R, k, BigInt(1));
  ExpandOptions eo;
  eo.sanity = true;
  return expand(*K, unit_ideal(*K), unit_ideal(*K), one, k, Rational(bound), field_units(name), eo);
}

}  // namespace

TEST_CASE("over Q with phi = 1 the coefficients are divisor sums") {
  auto K = field("Q");
  for (int k : {2, 3, 4}) {
    auto e = level_one("Q", k, 100);
    for (long n = 1; n <= 100; ++n) CHECK(e.at(exp_key(*K, qv({n}))) == sigma(n, k - 1));
  }
}

TEST_CASE("level one coefficients over real quadratic and cubic fields match ideal divisor sums") {
  for (const char* name : {"Q5", "z9"}) {
    auto K = field(name);
    auto e = level_one(name, 2, 12);
    auto xs = enumerate_totally_positive(*K, unit_ideal(*K), Rational(12));
    CHECK(!xs.empty());
    for (const auto& x : xs) CHECK(e.at(exp_key(*K, x)) == ideal_sigma(*K, x, 1));
  }
}

TEST_CASE("factorization orbits are in bijection with ideal divisors") {
  auto K = field("Q5");
  auto U = field_units("Q5");
  for (const auto& x : enumerate_totally_positive(*K, unit_ideal(*K), Rational(15))) {
    auto orbits = factorization_orbits(*K, x, unit_ideal(*K), unit_ideal(*K), U);
    CHECK(BigInt(static_cast<long>(orbits.size())) == ideal_sigma(*K, x, 0));
    for (const auto& [a, b] : orbits) CHECK(mul(*K, a, b) == x);
  }
}

TEST_CASE("norm power term carries the sign of the norm") {
  auto K = field("Q5");
  CHECK(norm_power_term(*K, qv({2, 0}), 3) == 16);
  // N(w) = -1: sgn(-1) (-1)^(k-1)
  CHECK(norm_power_term(*K, qv({0, 1}), 1) == -1);
  CHECK(norm_power_term(*K, qv({0, 1}), 2) == 1);
  CHECK(norm_power_term(*K, qv({0, 1}), 3) == -1);
}

TEST_CASE("summands transform by N(e)^k under a unit twist") {
  auto K = field("Q5");
  const QVector w = qv({0, 1});  // fundamental unit, norm -1
  const QVector winv = inverse(*K, w);
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    QVector a = random_element(rng, 2, 30);
    if (norm(*K, a) == 0) continue;
    for (int k : {1, 2, 3}) {
      BigInt lhs = norm_power_term(*K, mul(*K, winv, a), k);
      BigInt rhs = (k % 2 ? -1 : 1) * norm_power_term(*K, a, k);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("weight one requires phi(a, 0) = 0") {
  auto K = field("Q");
  auto R = std::make_shared<ResidueRing>(K, principal_ideal(*K, qv({3})));
  CHECK_THROWS_AS(require_weight_hypothesis(constant_fn(R, 1, BigInt(1)), 1), MathError);
  CHECK_NOTHROW(require_weight_hypothesis(constant_fn(R, 2, BigInt(1)), 2));
}

TEST_CASE("QExpansion text round trip") {
  for (const char* name : {"Q", "Q5", "z9"}) {
    auto e = level_one(name, 2, 10);
    e.level = "1";
    e.phi = "one";
    std::stringstream ss;
    write_qexpansion(ss, e);
    auto back = read_qexpansion(ss);
    CHECK(back == e);
    std::stringstream ss2;
    write_qexpansion(ss2, back);
    CHECK(ss2.str() == ss.str());
  }
  std::istringstream bad("not an expansion\n");
  CHECK_THROWS(read_qexpansion(bad));
}

TEST_CASE("expansions are deterministic") {
  auto a = level_one("z9", 2, 9), b = level_one("z9", 2, 9);
  CHECK(a == b);
}
