#include "doctest.h"
#include "hmf/cm.hpp"
#include "support.hpp"

#include <numeric>

using namespace hmf;
using namespace hmf::testing;

namespace {

// Number of reduced primitive positive definite forms ax^2 + bxy + cy^2 of discriminant D < 0.
long form_class_number(long D) {
  long h = 0;
  for (long a = 1; 3 * a * a <= -D; ++a)
    for (long b = -a + 1; b <= a; ++b) {
      if ((b * b - D) % (4 * a)) continue;
      long c = (b * b - D) / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++h;
    }
  return h;
}

bool squarefree(long n) {
  for (auto [p, e] : factor(std::labs(n)))
    if (e > 1) return false;
  return true;
}

CMQuadExt cm_over_q(long d0) { return make_cm("K", field("Q"), d0, field_units("Q")); }

}  // namespace

TEST_CASE("form oracle on textbook values") {
  CHECK(form_class_number(-3) == 1);
  CHECK(form_class_number(-4) == 1);
  CHECK(form_class_number(-23) == 3);
  CHECK(form_class_number(-20) == 2);
  CHECK(form_class_number(-56) == 4);
  CHECK(form_class_number(-71) == 7);
}

TEST_CASE("imaginary quadratic class numbers agree with the reduced form count") {
  for (long d0 = -1; d0 >= -60; --d0) {
    if (!squarefree(d0)) continue;
    auto cm = cm_over_q(d0);
    auto G = class_group(cm, {});
    INFO("d0 = " << d0);
    REQUIRE(G.status == GroupStatus::exact);
    const long D = quadratic_discriminant(d0);
    CHECK(G.order() == form_class_number(D));
  }
}

TEST_CASE("group structure for a few non-cyclic cases") {
  // Q(sqrt -21): Z/2 x Z/2, Q(sqrt -30): Z/2 x Z/2, Q(sqrt -26): Z/6
  CHECK(class_group(cm_over_q(-21), {}).to_string() == "Z/2 x Z/2");
  CHECK(class_group(cm_over_q(-30), {}).to_string() == "Z/2 x Z/2");
  CHECK(class_group(cm_over_q(-26), {}).to_string() == "Z/6");
}

TEST_CASE("the minus ray class group with trivial modulus is the class group") {
  for (long d0 : {-5, -23, -47}) {
    auto cm = cm_over_q(d0);
    auto R = ray_class_minus(cm, unit_ideal(*field("Q")), {});
    CHECK(R.order() == class_group(cm, {}).order());
  }
}

TEST_CASE("minus ray class groups match the order formula") {
  for (auto [d0, j] : {std::pair{-11L, 11L}, std::pair{-7L, 3L}, std::pair{-1L, 5L}, std::pair{-23L, 2L}}) {
    auto cm = cm_over_q(d0);
    Ideal J = principal_ideal(*field("Q"), qv({j}));
    auto R = ray_class_minus(cm, J, {});
    auto f = ray_minus_order_formula(cm, J, {});
    INFO("d0 = " << d0 << " j = " << j);
    REQUIRE(f.has_value());
    REQUIRE(R.status == GroupStatus::exact);
    CHECK(R.order() == *f);
  }
  CHECK(ray_class_minus(cm_over_q(-11), principal_ideal(*field("Q"), qv({11})), {}).to_string() == "Z/11");
}

TEST_CASE("class groups and narrow class groups of real fields") {
  CHECK(class_group(*field("Q5"), field_units("Q5"), {}).trivial());
  CHECK(narrow_class_group(*field("Q5"), field_units("Q5"), {}).trivial());
  CHECK(class_group(*field("z9"), field_units("z9"), {}).trivial());
  CHECK(narrow_class_group(*field("z9"), field_units("z9"), {}).trivial());
  CHECK(class_group(*field("z7"), field_units("z7"), {}).trivial());
  auto K3 = std::make_shared<const FieldOrder>(order_from_min_poly("Q3", {-3, 0, 1}));
  auto U3 = units_from_preset(*K3, {qv({2, 1})});
  CHECK(class_group(*K3, U3, {}).trivial());
  CHECK(narrow_class_group(*K3, U3, {}).to_string() == "Z/2");
  // Q(sqrt 10) has class number 2
  auto K10 = std::make_shared<const FieldOrder>(order_from_min_poly("Q10", {-10, 0, 1}));
  auto U10 = units_from_preset(*K10, {qv({3, 1})});
  CHECK(class_group(*K10, U10, {}).to_string() == "Z/2");
}

TEST_CASE("a starved search reports inconclusive, never a wrong answer") {
  ClassGroupOptions tiny;
  tiny.cap = 1;
  auto G = class_group(cm_over_q(-23), tiny);
  if (G.status == GroupStatus::exact)
    CHECK(G.order() == 3);
  else
    CHECK(G.to_string() == "inconclusive(cap=1)");
}

TEST_CASE("ramification helpers") {
  CHECK(splits_in_quadratic(-11, 3));
  CHECK_FALSE(splits_in_quadratic(-3, 3));
  CHECK_FALSE(splits_in_quadratic(-1, 3));
  CHECK(splits_in_quadratic(-2, 3));
  CHECK_THROWS_AS(make_cm("bad", field("z9"), -3, field_units("z9")), MathError);
  CHECK(minkowski_bound(*field("Q5")) >= 1);
}
