#include "doctest.h"
#include "support.hpp"

using namespace hmf;
using namespace hmf::testing;

TEST_CASE("battery entries are Gamma-invariant, homogeneous and supported on units") {
  for (const char* name : {"zeta9", "zeta7"}) {
    const auto& lp = preset(name);
    for (int k : {1, 2}) {
      auto battery = build_battery(lp, k);
      CHECK(battery.size() >= 5);
      for (const auto& phi : battery) {
        INFO(name << " " << phi.label() << " k=" << k);
        CHECK(gamma_invariant(phi, lp.tower));
        // the zeta7 ring is too large for a second full sweep; its entries were validated on construction
        if (lp.ver.top->size() < 1000) CHECK(check_homogeneity(phi, lp.top_units).ok);
        CHECK(units_supported_x(phi));
        CHECK(!phi.is_zero());
        CHECK_NOTHROW(require_weight_hypothesis(phi, k));
      }
    }
  }
}

TEST_CASE("the negative control breaks Gamma-invariance only") {
  const auto& lp = preset("zeta9");
  auto nc = build_negative_control(lp, 1);
  REQUIRE(nc.has_value());
  CHECK_FALSE(gamma_invariant(*nc, lp.tower));
  CHECK(check_homogeneity(*nc, lp.top_units).ok);
  CHECK(gamma_invariant(gamma_symmetrize(*nc, lp.tower), lp.tower));
}

TEST_CASE("unit symmetrization produces homogeneous functions") {
  const auto& lp = preset("zeta9");
  auto R = lp.ver.top;
  const auto units = R->units();
  for (int k : {1, 2, 3})
    for (std::size_t i = 0; i < units.size(); i += 37) {
      auto seed = indicator_fn(R, k, units[i], units[(i * 7 + 3) % units.size()]);
      auto phi = unit_symmetrize(seed, lp.top_units);
      auto w = check_homogeneity(phi, lp.top_units);
      CHECK(w.ok);
      CHECK_FALSE(check_homogeneity(seed, lp.top_units).ok);
    }
}

TEST_CASE("linear combinations evaluate pointwise") {
  const auto& lp = preset("zeta9");
  auto bat = build_battery(lp, 2);
  REQUIRE(bat.size() >= 2);
  auto combo = BigInt(3) * bat[0] + BigInt(-2) * bat[1];
  const auto& R = bat[0].ring();
  for (std::int64_t x = 0; x < R.size(); x += 5)
    for (std::int64_t y = 0; y < R.size(); y += 7) CHECK(combo(x, y) == 3 * bat[0](x, y) - 2 * bat[1](x, y));
}

TEST_CASE("pullback along ver") {
  const auto& lp = preset("zeta9");
  auto phi = build_battery(lp, 2).front();
  auto pb = pullback_ver(phi, lp.ver);
  const auto& B = pb.ring();
  for (std::int64_t x = 0; x < B.size(); ++x)
    for (std::int64_t y = 0; y < B.size(); ++y)
      CHECK(pb(x, y) == phi(lp.ver.image[static_cast<std::size_t>(x)], lp.ver.image[static_cast<std::size_t>(y)]));
}

TEST_CASE("homogeneity failures carry a witness") {
  const auto& lp = preset("zeta9");
  auto R = lp.ver.top;
  auto bad = indicator_fn(R, 2, R->one(), R->one());
  auto w = check_homogeneity(bad, lp.top_units);
  CHECK_FALSE(w.ok);
  CHECK(w.eps >= 0);
  CHECK_THROWS_AS(make_locfun(bad, lp.top_units), MathError);
}

TEST_CASE("partial Fourier transform of the constant function is orthogonality") {
  auto K = field("z9");
  auto R = std::make_shared<ResidueRing>(K, principal_ideal(*K, from_int<Rational>(*K, 3)));
  auto one = constant_fn(R, 2, BigInt(1));
  auto duals = dual_residues(*R);
  CHECK(static_cast<std::int64_t>(duals.size()) == R->size());
  int nonzero = 0;
  for (const auto& x : duals) {
    CycRat v = partial_fourier(one, x, 0, FourierMode::inverse_cardinality);
    if (!v.is_zero()) {
      ++nonzero;
      CHECK(v == CycRat::constant(1, 1));
    }
  }
  CHECK(nonzero == 1);
  CHECK(parse_fourier_mode("level-ratio") == FourierMode::level_ratio);
}
