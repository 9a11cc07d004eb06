#include "doctest.h"
#include "support.hpp"

#include <cmath>

using namespace hmf;
using namespace hmf::testing;

namespace {

// Norm and trace through the characteristic polynomial of the multiplication
// matrix, computed independently of norm()/trace().
Rational charpoly_norm(const FieldOrder& K, const QVector& x) {
  QPoly cp = charpoly(mul_matrix(K, x));
  Rational c0 = cp.c.empty() ? Rational(0) : cp.c[0];
  return K.n % 2 ? Rational(-c0) : c0;
}

}  // namespace

TEST_CASE("catalogue fields have the expected discriminants") {
  CHECK(field("Q")->discriminant == 1);
  CHECK(field("Q5")->discriminant == 5);
  CHECK(field("z9")->discriminant == 81);
  CHECK(field("z7")->discriminant == 49);
  for (const char* name : {"Q5", "z9", "z7"}) {
    auto K = field(name);
    CHECK(table_is_commutative(*K));
    CHECK(table_is_associative(*K));
    CHECK(trace_form_det(*K) == K->discriminant);
  }
}

TEST_CASE("norm is multiplicative and trace additive on random pairs") {
  std::mt19937_64 rng(2024);
  for (const char* name : {"Q5", "z9", "z7"}) {
    auto K = field(name);
    for (int i = 0; i < 100; ++i) {
      QVector a = random_element(rng, K->n, 12), b = random_element(rng, K->n, 12);
      QVector ab = mul(*K, a, b);
      CHECK(norm(*K, ab) == norm(*K, a) * norm(*K, b));
      CHECK(trace(*K, QVector(a + b)) == trace(*K, a) + trace(*K, b));
      CHECK(norm(*K, a) == charpoly_norm(*K, a));
      CHECK(trace(*K, a) == mul_matrix(*K, a).trace());
      CHECK(mul(*K, a, b) == mul(*K, b, a));
      if (!a.isZero()) CHECK(mul(*K, a, inverse(*K, a)) == one<Rational>(*K));
      IVector ia = to_int(a), ib = to_int(b);
      CHECK(norm(*K, ia) == norm(*K, a));
      CHECK(to_q(mul_checked(*K, ia, ib)) == ab);
    }
  }
}

TEST_CASE("embeddings are consistent with exact signs") {
  std::mt19937_64 rng(5);
  for (const char* name : {"Q5", "z9", "z7"}) {
    auto K = field(name);
    for (int i = 0; i < 100; ++i) {
      QVector a = random_element(rng, K->n, 9);
      if (a.isZero()) continue;
      auto e = embed(*K, a);
      double prod = 1, sum = 0, sq = 0;
      for (double v : e) {
        prod *= v;
        sum += v;
        sq += v * v;
      }
      CHECK(prod == doctest::Approx(norm(*K, a).get_d()).epsilon(1e-9));
      CHECK(sum == doctest::Approx(trace(*K, a).get_d()).epsilon(1e-9));
      CHECK(sq == doctest::Approx(t2(*K, a).get_d()).epsilon(1e-9));
      auto s = sign_vector(*K, a);
      bool all_pos = true;
      for (std::size_t w = 0; w < s.size(); ++w) {
        CHECK(s[w] == (e[w] > 0 ? 1 : -1));
        all_pos = all_pos && s[w] > 0;
      }
      CHECK(is_totally_positive(*K, a) == all_pos);
      CHECK(is_totally_positive_exact(*K, a) == all_pos);
    }
  }
}

TEST_CASE("non totally real polynomials are rejected") {
  CHECK_THROWS_AS(order_from_min_poly("bad", {1, 0, 1}), MathError);    // x^2 + 1
  CHECK_THROWS_AS(order_from_min_poly("bad", {-2, 0, 0, 1}), MathError);  // x^3 - 2
}

TEST_CASE("units of the catalogue fields") {
  for (const char* name : {"Q5", "z9", "z7"}) {
    auto K = field(name);
    auto U = field_units(name);
    CHECK(U.full_rank);
    CHECK(U.rank() == K->n - 1);
    for (const auto& u : U.fundamental) {
      CHECK(is_unit(*K, u));
      CHECK(abs(norm(*K, u)) == 1);
    }
    // the searched units generate a lattice of the same covolume
    auto S = unit_group(*K, 3);
    CHECK(S.full_rank);
    CHECK(log_rank(*K, S.fundamental) == K->n - 1);
  }
  auto K = field("Q5");
  CHECK_THROWS_AS(units_from_preset(*K, {qv({2, 0})}), MathError);
}

TEST_CASE("totally positive enumeration is monotone in the bound") {
  for (const char* name : {"Q5", "z9"}) {
    auto K = field(name);
    Ideal O = unit_ideal(*K);
    std::size_t prev = 0;
    std::vector<QVector> last;
    for (int T = 1; T <= 12; ++T) {
      auto xs = enumerate_totally_positive(*K, O, Rational(T));
      CHECK(xs.size() >= prev);
      // every earlier element survives and traces are sorted
      for (std::size_t i = 0; i < last.size(); ++i) CHECK(xs[i] == last[i]);
      for (std::size_t i = 1; i < xs.size(); ++i) CHECK(!canonical_less(*K, xs[i], xs[i - 1]));
      for (const auto& x : xs) {
        CHECK(is_totally_positive_exact(*K, x));
        CHECK(trace(*K, x) <= T);
      }
      prev = xs.size();
      last = xs;
    }
  }
}

TEST_CASE("totally positive enumeration against a box scan over Q(sqrt 5)") {
  auto K = field("Q5");
  // basis 1, w with w = (1 + sqrt 5) / 2; Tr(a + b w) = 2a + b
  const double w1 = (1 + std::sqrt(5.0)) / 2, w2 = (1 - std::sqrt(5.0)) / 2;
  std::size_t count = 0;
  for (long a = -40; a <= 40; ++a)
    for (long b = -40; b <= 40; ++b)
      if (a + b * w1 > 0 && a + b * w2 > 0 && 2 * a + b <= 10) ++count;
  CHECK(enumerate_totally_positive(*K, unit_ideal(*K), Rational(10)).size() == count);
}
