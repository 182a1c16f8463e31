#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>
#include <string>

#include "asym/econ.hpp"

using namespace asym;

TEST_CASE("quadratic effort cost") {
  AgentProfile p{1.0, 2.0, 0.0, Ability::High};
  REQUIRE(cost(0.0, p) == 0.0);
  REQUIRE(cost(0.5, p) == Catch::Approx(0.25));
  REQUIRE(cost(1.0, p) == Catch::Approx(1.0));
  p.gamma = 1.5;
  REQUIRE(cost(0.4, p) == Catch::Approx(0.12));
  REQUIRE_THROWS_AS(cost(-0.1, p), std::domain_error);
  p.gamma = 0.0;
  REQUIRE_THROWS_AS(cost(0.5, p), std::domain_error);
}

TEST_CASE("linear production") {
  REQUIRE(production(0.5, 0.6) == Catch::Approx(0.3));
  REQUIRE(production(0.0, 1.0) == 0.0);
  REQUIRE_THROWS_AS(production(0.5, 0.0), std::domain_error);
  REQUIRE_THROWS_AS(production(-0.2, 1.0), std::domain_error);
}

TEST_CASE("effort clamp honors bounds") {
  EffortBounds b;
  REQUIRE(clamp_effort(-1.0, b) == 0.0);
  REQUIRE(clamp_effort(0.3, b) == 0.3);
  REQUIRE(clamp_effort(2.0, b) == 1.0);
  REQUIRE_THROWS_AS(clamp_effort(0.5, EffortBounds{1.0, 0.0}), std::domain_error);
}

TEST_CASE("first-best effort and welfare at the class anchors") {
  EffortBounds b;
  // theta/gamma clamped to [0,1]
  REQUIRE(first_best_effort(1.0, 1.0, b) == Catch::Approx(1.0));
  REQUIRE(first_best_effort(0.6, 1.5, b) == Catch::Approx(0.4));
  REQUIRE(first_best_effort(0.3, 2.5, b) == Catch::Approx(0.12));
  // theta^2 / (2 gamma) when interior
  REQUIRE(first_best_welfare(1.0, 1.0, b) == Catch::Approx(0.5));
  REQUIRE(first_best_welfare(0.6, 1.5, b) == Catch::Approx(0.12));
  REQUIRE(first_best_welfare(0.3, 2.5, b) == Catch::Approx(0.018));
  // binding upper bound: e = hi, welfare = theta*hi - gamma/2 hi^2
  REQUIRE(first_best_effort(2.0, 1.0, b) == 1.0);
  REQUIRE(first_best_welfare(2.0, 1.0, b) == Catch::Approx(1.5));
}

TEST_CASE("class anchors") {
  REQUIRE(anchor_of(Ability::High).theta == 1.0);
  REQUIRE(anchor_of(Ability::High).gamma == 1.0);
  REQUIRE(anchor_of(Ability::Medium).theta == 0.6);
  REQUIRE(anchor_of(Ability::Medium).gamma == 1.5);
  REQUIRE(anchor_of(Ability::Low).theta == 0.3);
  REQUIRE(anchor_of(Ability::Low).gamma == 2.5);
  REQUIRE(std::string(to_string(Ability::High)) == "high");
  REQUIRE(std::string(to_string(Ability::Medium)) == "medium");
  REQUIRE(std::string(to_string(Ability::Low)) == "low");
}

TEST_CASE("cost curvature interpolates through the anchors and clamps outside") {
  REQUIRE(gamma_curve(0.3) == Catch::Approx(2.5));
  REQUIRE(gamma_curve(0.6) == Catch::Approx(1.5));
  REQUIRE(gamma_curve(1.0) == Catch::Approx(1.0));
  REQUIRE(gamma_curve(0.45) == Catch::Approx(2.0));
  REQUIRE(gamma_curve(0.8) == Catch::Approx(1.25));
  REQUIRE(gamma_curve(0.0) == Catch::Approx(2.5));
  REQUIRE(gamma_curve(1.7) == Catch::Approx(1.0));
  // monotone non-increasing over a sweep
  double prev = gamma_curve(0.0);
  for (int i = 1; i <= 150; ++i) {
    const double g = gamma_curve(i * 0.01);
    REQUIRE(g <= prev + 1e-15);
    prev = g;
  }
}

TEST_CASE("reservation utility is a share of first-best surplus") {
  EffortBounds b;
  REQUIRE(u0_curve(1.0, 0.4, b) == Catch::Approx(0.2));
  REQUIRE(u0_curve(0.6, 0.4, b) == Catch::Approx(0.048));
  REQUIRE(u0_curve(0.3, 0.4, b) == Catch::Approx(0.0072));
  REQUIRE(u0_curve(0.6, 0.0, b) == 0.0);
}

TEST_CASE("profiles built at and off the anchors") {
  const AgentProfile hp = profile_for(Ability::High, 0.4);
  REQUIRE(hp.theta == 1.0);
  REQUIRE(hp.gamma == 1.0);
  REQUIRE(hp.u0 == Catch::Approx(0.2));
  REQUIRE(hp.ability == Ability::High);

  // jittered type reads curvature and reservation off the curves
  const AgentProfile mid = profile_for(Ability::Medium, 0.4, 0.05);
  REQUIRE(mid.theta == Catch::Approx(0.65));
  REQUIRE(mid.gamma == Catch::Approx(gamma_curve(0.65)));
  REQUIRE(mid.u0 == Catch::Approx(u0_curve(0.65, 0.4, EffortBounds{})));
}
