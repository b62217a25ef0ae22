#include <stdexcept>

#include "doctest.h"
#include "dynclock/sap.hpp"

using namespace dynclock;

TEST_CASE("growth function presets and validation") {
  CHECK_THROWS_AS(GrowthFunction::constant(0), std::invalid_argument);
  CHECK_THROWS_AS(GrowthFunction::table({}), std::invalid_argument);
  CHECK_THROWS_AS(GrowthFunction::table({3, 2}), std::invalid_argument);

  GrowthFunction c = GrowthFunction::constant(5);
  CHECK(c(0) == 5);
  CHECK(c(100) == 5);
  CHECK(!c.inflationary());

  GrowthFunction s = GrowthFunction::successor();
  CHECK(s(7) == 8);
  CHECK(s.inflationary());

  GrowthFunction a = GrowthFunction::affine();
  CHECK(a(3) == 7);
  CHECK(a.inflationary());

  GrowthFunction t = GrowthFunction::table({1, 2, 2, 9});
  CHECK(t(0) == 1);
  CHECK(t(2) == 2);
  CHECK(t(50) == 9);  // clamped
  CHECK(!t.inflationary());
}

TEST_CASE("growth function parsing round-trips the name") {
  for (const char* spec : {"successor", "affine", "constant:4", "table:1,2,5"}) {
    auto g = GrowthFunction::parse(spec);
    REQUIRE(g.has_value());
    CHECK(g->name() == spec);
  }
  CHECK(!GrowthFunction::parse("constant:0").has_value());
  CHECK(!GrowthFunction::parse("cubic").has_value());
  CHECK(!GrowthFunction::parse("table:5,2").has_value());
}

TEST_CASE("iterated growth saturates instead of wrapping") {
  GrowthFunction a = GrowthFunction::affine();
  CHECK(a.iterate(1, 200) == ~std::uint64_t{0});
  GrowthFunction s = GrowthFunction::successor();
  CHECK(s.iterate(3, 4) == 7);
}

TEST_CASE("least iterate reaching a target") {
  GrowthFunction c5 = GrowthFunction::constant(5);
  CHECK(growth_star(c5, 3) == 1);
  CHECK(growth_star(c5, 5) == 1);
  CHECK(!growth_star(c5, 6).has_value());
  CHECK(growth_star(c5, 0) == 0);
  CHECK(growth_star(GrowthFunction::successor(), 4) == 4);
  CHECK(growth_star(GrowthFunction::affine(), 4) == 3);  // 0 -> 1 -> 3 -> 7
  CHECK(!growth_star(GrowthFunction::table({0, 1}), 1).has_value());
}

TEST_CASE("step keeps the old factor as modulus and maxes factors") {
  SapConfig cfg{4, GrowthFunction::successor()};
  SapState me{3, 2};
  // clocks 3 and 7 agree modulo 4, so no escalation
  SapStepResult r = sap_step(me, {{3, 2}, {7, 2}}, cfg);
  CHECK(r.state.clock == 4);  // (1 + 3) mod (4 * 2)
  CHECK(r.state.period_factor == 2);
  CHECK(!r.growth_fired);
}

TEST_CASE("discordant clocks escalate the factor after the max") {
  SapConfig cfg{4, GrowthFunction::successor()};
  SapState me{3, 2};
  SapStepResult r = sap_step(me, {{3, 2}, {6, 3}}, cfg);
  CHECK(r.state.clock == 4);          // modulus still 4 * old factor 2
  CHECK(r.state.period_factor == 4);  // max(2,3) then successor
  CHECK(r.growth_fired);
}

TEST_CASE("clock wraps to zero from one below the modulus") {
  SapConfig cfg{2, GrowthFunction::constant(3)};
  SapState me{5, 3};  // modulus 6
  SapStepResult r = sap_step(me, {{5, 3}}, cfg);
  CHECK(r.state.clock == 0);
  CHECK(!r.growth_fired);
}

TEST_CASE("zero factor leaves the clock unreduced until growth kicks in") {
  SapConfig cfg{2, GrowthFunction::successor()};
  SapState me{9, 0};
  SapStepResult r = sap_step(me, {{9, 0}, {4, 0}}, cfg);
  CHECK(r.state.clock == 5);  // modulus 0 means no wrap
  CHECK(r.state.period_factor == 1);
  CHECK(r.growth_fired);
}

TEST_CASE("fixed-period step") {
  CHECK(sap_fixed_step({0, 0}, 2, 3) == 1);
  CHECK(sap_fixed_step({5}, 2, 3) == 0);  // wrap from P*M - 1
  CHECK(sap_fixed_step({3, 7, 2}, 4, 2) == 3);
  CHECK_THROWS_AS(sap_fixed_step({}, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(sap_fixed_step({1}, 2, 0), std::invalid_argument);
}

TEST_CASE("diameter-based stabilization bound") {
  CHECK(sap_diameter_bound(4, {2, GrowthFunction::constant(10)}) == 12);
  CHECK(sap_diameter_bound(4, {2, GrowthFunction::successor()}) == 24);
  CHECK(sap_diameter_bound(1, {8, GrowthFunction::constant(1)}) == 3);
  CHECK(!sap_diameter_bound(4, {2, GrowthFunction::constant(3)}).has_value());
}

TEST_CASE("uniform-rootedness bound pieces") {
  SapConfig cfg{2, GrowthFunction::successor()};
  SapUniformBound b = sap_uniform_bound(2, 1, cfg, 1, 1);
  // q1 = least q with g^q(0) >= M_Z + ceil((R+1)/P) = 1 + 2 = 3
  CHECK(b.q1 == 3);
  CHECK(b.center_factor == 1);
  CHECK(sap_uniform_deadline(1, b, 2, 2) == 1 + 3 * 2 + 2 * 1 + 2);
  CHECK_THROWS_AS(sap_uniform_bound(2, 1, SapConfig{2, GrowthFunction::constant(5)}, 1, 1),
                  std::invalid_argument);
}
