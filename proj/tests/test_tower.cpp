#include "doctest.h"
#include "support.hpp"

using namespace hmf;
using namespace hmf::testing;

TEST_CASE("Galois action on the preset towers") {
  std::mt19937_64 rng(23);
  for (const char* name : {"zeta9", "zeta7"}) {
    const auto& t = preset(name).tower;
    const auto& T = *t.top;
    CHECK(t.p == 3);
    for (int i = 0; i < 40; ++i) {
      QVector x = random_element(rng, T.n, 10), y = random_element(rng, T.n, 10);
      CHECK(galois(t, 3, x) == x);
      CHECK(galois(t, 1, mul(T, x, y)) == mul(T, galois(t, 1, x), galois(t, 1, y)));
      CHECK(norm(T, galois(t, 1, x)) == norm(T, x));
      QVector tr = rel_trace(t, x);
      CHECK(tr.size() == 1);
      CHECK(tr(0) == trace(T, x));
      // descent of a fixed element
      QVector fixed = x + galois(t, 1, x) + galois(t, 2, x);
      CHECK(descend(t, fixed) == tr);
    }
    CHECK(galois(t, 1, t.top->generator) != t.top->generator);
  }
}

TEST_CASE("extension and contraction of ideals") {
  for (const char* name : {"zeta9", "zeta7"}) {
    const auto& t = preset(name).tower;
    for (long m : {2L, 3L, 7L, 9L, 63L}) {
      Ideal I = principal_ideal(*t.base, from_int<Rational>(*t.base, m));
      Ideal J = extend_ideal(t, I);
      CHECK(ideal_norm(J) == Rational(m * m * m));
      CHECK(contract_ideal(t, J) == I);
    }
  }
}

TEST_CASE("relative different and its totally positive generator") {
  for (const char* name : {"zeta9", "zeta7"}) {
    const auto& t = preset(name).tower;
    // base is Q, so the relative different is the absolute one
    CHECK(ideal_norm(t.rel_different) == Rational(t.top->discriminant));
    REQUIRE(t.xi.has_value());
    CHECK(is_totally_positive_exact(*t.top, *t.xi));
    CHECK(principal_ideal(*t.top, *t.xi) == t.rel_different);
    for (const auto& x : t.xi_all) CHECK(principal_ideal(*t.top, x) == t.rel_different);
  }
}

TEST_CASE("ver is a ring map on residues and Gamma permutes residues") {
  const auto& lp = preset("zeta9");
  const auto& ver = lp.ver;
  const auto& B = *ver.base;
  const auto& T = *ver.top;
  for (std::int64_t a = 0; a < B.size(); ++a)
    for (std::int64_t b = 0; b < B.size(); ++b) {
      CHECK(ver.image[static_cast<std::size_t>(B.mul(a, b))] ==
            T.mul(ver.image[static_cast<std::size_t>(a)], ver.image[static_cast<std::size_t>(b)]));
      CHECK(ver.image[static_cast<std::size_t>(B.add(a, b))] ==
            T.add(ver.image[static_cast<std::size_t>(a)], ver.image[static_cast<std::size_t>(b)]));
    }
  auto g1 = galois_on_residues(lp.tower, T, 1);
  std::vector<std::int64_t> sorted = g1;
  std::sort(sorted.begin(), sorted.end());
  for (std::int64_t i = 0; i < T.size(); ++i) {
    CHECK(sorted[static_cast<std::size_t>(i)] == i);
    auto g = static_cast<std::size_t>(i);
    CHECK(g1[static_cast<std::size_t>(g1[static_cast<std::size_t>(g1[g])])] == i);
  }
  // images of ver are fixed by Gamma
  for (auto img : ver.image) CHECK(g1[static_cast<std::size_t>(img)] == img);
}

TEST_CASE("tower validation rejects a non-automorphism") {
  auto base = field("Q");
  auto top = field("z9");
  const auto& good = preset("zeta9").tower;
  CHECK_NOTHROW(make_tower("ok", base, top, 3, qv({-2, 0, 1}), {}, good.base_units, good.top_units));
  CHECK_THROWS_AS(make_tower("bad", base, top, 3, qv({1, 1, 0}), {}, good.base_units, good.top_units), MathError);
}
