#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "frogwb/one_particle.hpp"

using namespace frogwb;
using doctest::Approx;

// gamma = 1 references from the oracle script: P(D-> >= n) = int f(v)^n dF(v).
TEST_CASE("exact tail matches independent references") {
  const auto a = tail_exact(1, EdgeLaw::beta(1.0, 1.0), 1.0, 1e-9);
  CHECK(a.value == Approx(0.30685281944005469).epsilon(1e-8));
  CHECK(std::fabs(a.value - 0.30685281944005469) <= a.err);
  const auto b = tail_exact(5, EdgeLaw::beta(1.0, 0.5), 1.0, 1e-6);
  CHECK(std::fabs(b.value - 0.13552702030790365) <= b.err);
  // M(s) ~ 1 / log s, so only a loose target is reachable here.
  const auto c = tail_exact(3, EdgeLaw::log_corrected(1.0), 1.0, 1e-3);
  CHECK(std::fabs(c.value - 0.24412516013863157) <= c.err);
  CHECK(c.err <= 1e-3);
}

TEST_CASE("exact tails decrease in n and the batch form agrees with single calls") {
  const auto e = EdgeLaw::beta(1.0, 2.0);
  const auto many = tail_exact_many({1, 2, 4, 8}, e, 1.5, {1e-8, 1e-8, 1e-8, 1e-8});
  REQUIRE(many.size() == 4);
  for (std::size_t i = 1; i < many.size(); ++i) CHECK(many[i].value < many[i - 1].value);
  const auto one = tail_exact(4, e, 1.5, 1e-8);
  CHECK(one.value == Approx(many[2].value).epsilon(1e-7));
  CHECK(to_string(TailMethod::RaoBlackwellMC) == "rb");
  CHECK(tail_method_from_string("exact") == TailMethod::ExactQuadrature);
  CHECK_THROWS(tail_method_from_string("bogus"));
}

TEST_CASE("truncation cap is reported") {
  ExactOptions o;
  o.max_terms = 1000;
  CHECK_THROWS_WITH_AS(tail_exact(50, EdgeLaw::beta(1.0, 0.2), 2.0, 1e-9, o), doctest::Contains("term cap"),
                       std::runtime_error);
}

TEST_CASE("Monte Carlo estimators agree with the exact tail") {
  const auto e = EdgeLaw::beta(1.0, 1.0);
  const auto exact = tail_exact(3, e, 1.0, 1e-9);
  const auto mc = tail_mc(3, e, 1.0, 200000, 42);
  const auto rb = tail_rb(3, e, 1.0, 200000, 42);
  CHECK(std::fabs(mc.value - exact.value) <= 4.5 * mc.err);
  CHECK(std::fabs(rb.value - exact.value) <= 4.5 * rb.err);
  CHECK(rb.err < mc.err);
  CHECK(mc.method == TailMethod::DirectMC);
  CHECK(tail_mc(3, e, 1.0, 1000, 7).value == tail_mc(3, e, 1.0, 1000, 7).value);
}

TEST_CASE("displacement tails dominate") {
  const auto d = displacement_tails(EdgeLaw::beta(1.0, 0.5), 1.0, 6, 50000, 3);
  REQUIRE(d.right.size() == 6);
  for (std::size_t i = 0; i < d.right.size(); ++i) {
    CHECK(d.star[i] >= d.right[i]);
    if (i > 0) CHECK(d.right[i] <= d.right[i - 1]);
  }
}

TEST_CASE("ratio normalization and curves") {
  const auto L = SlowlyVarying::constant(0.5);
  CHECK(ratio_normalization(100, 0.5, L, 1.0) == Approx(0.5 / 100.0).epsilon(1e-14));
  const auto pts = ratio_curve({50, 100, 200}, EdgeLaw::beta(1.0, 0.5), 1.0, TailMethod::ExactQuadrature,
                               0.01, 0, 0);
  REQUIRE(pts.size() == 3);
  for (const auto& p : pts) {
    CHECK(p.err <= 0.01);
    CHECK(p.ratio == Approx(p.tail.value / p.normalization).epsilon(1e-12));
    // Within the gamma = 1 band [0.1506, sqrt 2].
    CHECK(p.ratio > 0.15);
    CHECK(p.ratio < 1.42);
  }
  CHECK_THROWS(ratio_curve({100, 50}, EdgeLaw::beta(1.0, 0.5), 1.0, TailMethod::ExactQuadrature, 0.01, 0, 0));
  CHECK_THROWS(ratio_curve({10}, EdgeLaw::truncated(EdgeLaw::beta(1.0, 1.0), 0.5), 1.0,
                           TailMethod::ExactQuadrature, 0.01, 0, 0));
}
