#include "doctest.h"
#include "support.hpp"

using namespace hmf;
using namespace hmf::testing;

namespace {

QExpansion top_expansion(const LoadedPreset& lp, const LocConstFn& phi, int k, long bound) {
  return expand(*lp.top, unit_ideal(*lp.top), extend_ideal(lp.tower, lp.b), phi, k, Rational(bound), lp.tower.top_units);
}

}  // namespace

TEST_CASE("diagonal restriction sums coefficients over trace fibres") {
  const auto& lp = preset("zeta9");
  auto phi = build_battery(lp, 2).front();
  auto top = top_expansion(lp, phi, 2, 12);
  auto res = restrict_diagonal(top, lp.tower, Rational(12));
  std::map<Rational, BigInt> oracle;
  for (const auto& [key, c] : top.coeffs) oracle[key.trace] += c;
  for (long n = 1; n <= 12; ++n) CHECK(res.at(exp_key(*lp.base, qv({n}))) == oracle[Rational(n)]);
  CHECK_THROWS(restrict_diagonal(top, lp.tower, Rational(13)));
}

TEST_CASE("Frobenius twist scales exponents") {
  const auto& lp = preset("zeta9");
  auto phi = pullback_ver(build_battery(lp, 2).front(), lp.ver);
  auto e = expand(*lp.base, unit_ideal(*lp.base), lp.b, phi, 6, Rational(10), lp.tower.base_units);
  auto f = frobenius_twist(e, 3);
  CHECK(f.coeffs.size() == e.coeffs.size());
  for (const auto& [key, c] : e.coeffs) CHECK(f.at(exp_key(*lp.base, QVector(3 * key.vec()))) == c);
  CHECK(f.trace_bound == 3 * e.trace_bound);
}

TEST_CASE("the congruence holds for the zeta9 battery at weight 1") {
  const auto& lp = preset("zeta9");
  for (const auto& phi : build_battery(lp, 1)) {
    auto r = check_congruence(phi, lp.tower, lp.ver, lp.b, 1, Rational(15), {}, "zeta9");
    INFO(phi.label());
    CHECK_FALSE(r.refused);
    CHECK(r.mismatches.empty());
    CHECK(r.exponents_compared == 15);
    CHECK(r.lhs_hash == expansion_hash(r.lhs));
    CHECK(!r.lhs.coeffs.empty());
  }
}

TEST_CASE("the negative control is refused, and fails when forced") {
  const auto& lp = preset("zeta9");
  auto nc = *build_negative_control(lp, 1);
  auto refused = check_congruence(nc, lp.tower, lp.ver, lp.b, 1, Rational(30));
  CHECK(refused.refused);
  CHECK_FALSE(refused.gamma_invariant);
  CongruenceOptions opt;
  opt.forced = true;
  auto forced = check_congruence(nc, lp.tower, lp.ver, lp.b, 1, Rational(30), opt);
  CHECK_FALSE(forced.refused);
  CHECK(forced.mismatches.size() >= 1);
  for (const auto& m : forced.mismatches) CHECK(m.lhs != m.rhs);
}

TEST_CASE("Gamma-orbit structure at small exponents") {
  const auto& lp = preset("zeta9");
  auto phi = build_battery(lp, 2).front();
  for (long xi = 1; xi <= 9; ++xi) {
    auto d = orbit_diagnostics(qv({xi}), lp.tower, lp.b, phi, 2);
    INFO("xi = " << xi);
    for (const auto& [size, count] : d.size_counts) CHECK((size == 1 || size == 3));
    CHECK(d.sizes_ok);
    CHECK(d.free_subtotals_vanish);
    CHECK(d.fixed_exponents_in_pb);
    CHECK(d.fixed_descend);
    CHECK(d.fixed_match_base);
    // fixed orbits need xi in 3Z
    if (xi % 3 != 0) CHECK(d.fixed_count == 0);
  }
}

TEST_CASE("orbit totals reproduce the top coefficients") {
  const auto& lp = preset("zeta9");
  auto phi = build_battery(lp, 1)[1];
  auto top = top_expansion(lp, phi, 1, 8);
  auto res = restrict_diagonal(top, lp.tower, Rational(8));
  for (long xi = 1; xi <= 8; ++xi) {
    auto d = orbit_diagnostics(qv({xi}), lp.tower, lp.b, phi, 1);
    CHECK(d.total == res.at(exp_key(*lp.base, qv({xi}))));
  }
}
