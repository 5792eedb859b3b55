#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "frogwb/asymptotics.hpp"

using namespace frogwb;
using doctest::Approx;

TEST_CASE("critical exponent and theta") {
  CHECK(beta_c(1.0) == 0.5);
  CHECK(beta_c(0.25) == 2.0);
  CHECK(theta(1.0) == Approx(0.079327626965728526).epsilon(1e-14));
  CHECK(theta(1e8) == Approx(0.25).epsilon(1e-3));
}

// References from the oracle script (mpmath).
TEST_CASE("upper constants") {
  CHECK(K_up(2.0, 0.4) == Approx(4.8889527040041273).epsilon(1e-12));
  CHECK(K_up(2.0, 0.15) == Approx(6.6993234052135406).epsilon(1e-12));
  CHECK(K_up(0.5, 1.0) == Approx(0.79788456080286541).epsilon(1e-12));
  CHECK(K_up(1.0, 0.5, Branch::BurnIn) == Approx(std::numbers::sqrt2).epsilon(1e-13));
  CHECK_THROWS(K_up(0.5, 1.0, Branch::WearOut));
}

TEST_CASE("the two closed forms differ by 2^-beta at gamma = 1") {
  for (double b : {0.2, 0.5, 0.9}) {
    CHECK(K_up(1.0, b, Branch::BurnIn) == Approx(K_up(1.0, b, Branch::WearOut) * std::pow(2.0, -b)).epsilon(1e-12));
  }
  // Each branch is continuous in gamma on its own side.
  CHECK(K_up(1.0 + 1e-7, 0.5) == Approx(K_up(1.0, 0.5, Branch::WearOut)).epsilon(1e-5));
  CHECK(K_up(1.0 - 1e-7, 0.5) == Approx(K_up(1.0, 0.5, Branch::BurnIn)).epsilon(1e-5));
}

TEST_CASE("lower constants") {
  const auto s1 = K_down_sup(1.0, 0.5);
  CHECK(s1.value == Approx(0.15063306062040785).epsilon(1e-10));
  CHECK(s1.c0_star == Approx(1.7693149584321924).epsilon(1e-5));
  CHECK_FALSE(s1.boundary_hit);
  const auto s2 = K_down_sup(2.0, 0.4);
  CHECK(s2.value == Approx(0.17616959757186752).epsilon(1e-10));
  CHECK(s2.c0_star == Approx(0.93928993635806307).epsilon(1e-5));
  const auto s3 = K_down_sup(2.0, 0.15);
  CHECK(s3.value == Approx(0.63345360702440883).epsilon(1e-10));
  CHECK(s3.c0_star == Approx(3.7073561822382654).epsilon(1e-5));
  for (double c0 : {0.3, 1.0, 4.0}) {
    CHECK(K_down_quadrature(2.0, 0.4, c0) == Approx(K_down(2.0, 0.4, c0)).epsilon(1e-8));
    CHECK(K_down_quadrature(1.5, 0.2, c0) == Approx(K_down(1.5, 0.2, c0)).epsilon(1e-8));
  }
  CHECK(K_down(0.5, 1.5) == Approx(K_up(0.5, 1.5) * std::pow(2.0, -1.5)).epsilon(1e-13));
  CHECK(K_lower(0.5, 1.5) == K_down(0.5, 1.5));
  CHECK(K_lower(2.0, 0.4) == s2.value);
  CHECK_THROWS(K_down(2.0, 0.4));
}

TEST_CASE("phase classification") {
  const EtaSummary one{1.0, 0.0};
  const auto L1 = SlowlyVarying::constant(1.0);
  CHECK(classify_phase(1.0, 0.3, L1, one).verdict == Verdict::SurvivesWP);
  CHECK(classify_phase(1.0, 0.8, L1, one).verdict == Verdict::ExtinctAS);
  CHECK(classify_phase(1.0, 0.5, L1, one).verdict == Verdict::BoundaryInconclusive);
  CHECK(classify_phase(0.5, 2.0, L1, one).verdict == Verdict::ExtinctAS);
  CHECK(classify_phase(0.5, 0.5, L1, one).verdict == Verdict::SurvivesWP);
  // At beta_c, a vanishing L gives extinction and a growing one gives survival.
  CHECK(classify_phase(1.0, 0.5, SlowlyVarying::log_power(1.0), one).verdict == Verdict::ExtinctAS);
  CHECK(classify_phase(1.0, 0.5, SlowlyVarying::power_of_log(1.0, 1.0), one).verdict == Verdict::SurvivesWP);
  // Small constant L at beta_c: extinction when 2 K_up L < 1 / E eta.
  const auto small = classify_phase(1.0, 0.5, SlowlyVarying::constant(0.1), one);
  CHECK(small.verdict == Verdict::ExtinctAS);
  REQUIRE(small.boundary_lhs.has_value());
  CHECK(*small.boundary_lhs < *small.boundary_rhs);
  // Infinite E(eta) reads as 1/E(eta) = 0 on the survival side only.
  const EtaSummary heavy{std::numeric_limits<double>::infinity(), 0.0};
  CHECK(classify_phase(1.0, 0.5, L1, heavy).verdict == Verdict::SurvivesWP);
  CHECK(classify_phase(1.0, 0.8, L1, heavy).verdict == Verdict::OutsideHypotheses);
  CHECK(classify_phase(1.0, 0.3, L1, EtaSummary{0.0, 1.0}).verdict == Verdict::OutsideHypotheses);
  CHECK(classify_phase(-1.0, 0.5, L1, one).verdict == Verdict::OutsideHypotheses);
  CHECK(to_string(Verdict::ExtinctAS) == "ExtinctAS");
}

TEST_CASE("sandwich is nondegenerate and theta increases") {
  for (int i = 0; i < 20; ++i) {
    const double g = 0.55 + 0.15 * i;
    for (int j = 0; j < 20; ++j) {
      const double b = 0.05 + 0.1 * j;
      for (double c0 : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        const double down = g >= 1.0 ? K_down(g, b, c0) : K_down(g, b);
        CHECK(down < K_up(g, b));
      }
    }
  }
  double prev = 0.0;
  for (double c0 = 0.01; c0 < 100.0; c0 *= 1.5) {
    CHECK(theta(c0) > prev);
    prev = theta(c0);
  }
}

TEST_CASE("scaling L scales the boundary quantities") {
  const EtaSummary one{1.0, 0.0};
  for (double g : {0.5, 2.0}) {
    const double bc = beta_c(g);
    const auto a = classify_phase(g, bc, SlowlyVarying::constant(0.01), one);
    const auto b = classify_phase(g, bc, SlowlyVarying::constant(0.03), one);
    REQUIRE(a.boundary_lhs.has_value());
    CHECK(*b.boundary_lhs == Approx(3.0 * *a.boundary_lhs).epsilon(1e-13));
    CHECK(classify_phase(g, 2 * bc, SlowlyVarying::constant(7.0), one).verdict == Verdict::ExtinctAS);
    CHECK(classify_phase(g, bc / 2, SlowlyVarying::constant(1e-3), one).verdict == Verdict::SurvivesWP);
  }
}

TEST_CASE("classification by edge family") {
  const auto eta = summarize(EtaLaw::poisson(1.0));
  CHECK(eta.mean == 1.0);
  CHECK(classify_phase(2.0, EdgeLaw::log_corrected(1.0), eta).verdict == Verdict::SurvivesWP);
  CHECK(classify_phase(1.0, EdgeLaw::truncated(EdgeLaw::beta(1.0, 1.0), 0.5), eta).verdict ==
        Verdict::ExtinctAS);
  CHECK(classify_phase(1.0, EdgeLaw::beta(1.0, 0.2), eta).verdict == Verdict::SurvivesWP);
  CHECK(classify_phase(1.0, EdgeLaw::beta(1.0, 2.0), eta).verdict == Verdict::ExtinctAS);
  CHECK(classify_phase(1.0, EdgeLaw::tabulated({0.0, 1.0}, {1.0, 1.0}), eta).verdict ==
        Verdict::OutsideHypotheses);
}
