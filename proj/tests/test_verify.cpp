#include <doctest.h>

#include <algorithm>

#include "frogwb/verify.hpp"

using namespace frogwb;

TEST_CASE("fast checks pass") {
  CHECK(check_tau1_tail().passed);
  CHECK(check_ballot_enumeration().passed);
  CHECK(check_berry_esseen_bound(1.0, 100).passed);
  CHECK(check_fexp_bounds().passed);
  CHECK(check_superadditivity(2000, 1).passed);
  CHECK(check_stable_moments(0.5, 0.5, 100000, 2).passed);
  CHECK(check_stable_scaling(0.7, 100000, 3).passed);
  CHECK(check_bernstein_mixture(0.5, 100000, 4).passed);
  CHECK(check_laplace_limit(2.0).passed);
}

TEST_CASE("Potter check on the supported families") {
  CHECK(check_potter_uct(SlowlyVarying::constant(0.5)).passed);
  CHECK(check_potter_uct(SlowlyVarying::log_power(0.25)).passed);
  CHECK(check_potter_uct(SlowlyVarying::power_of_log(1.0, -1.0)).passed);
  // (1 + log x)^-2 still moves by ~0.067 across [x/2, 2x] at x = 1e9.
  const auto r = check_potter_uct(SlowlyVarying::log_power(1.0));
  CHECK_FALSE(r.passed);
  CHECK(r.observed == doctest::Approx(0.0667).epsilon(0.01));
}

TEST_CASE("reduction and symmetry at modest sizes") {
  const auto red = check_reduction_identity({1, 3}, EdgeLaw::beta(1.0, 1.0), 1.0, 100000, 5);
  CHECK(red.passed);
  CHECK(red.observed <= 3.0);
  CHECK(check_symmetry(EdgeLaw::beta(1.0, 0.5), 1.0, 5, 100000, 6).passed);
}

TEST_CASE("a failing comparison is reported, not thrown") {
  // A band tolerance of -0.9 shrinks the sandwich below any ratio.
  const auto r = check_ratio_sandwich(1.0, 0.5, {20, 40, 80, 200}, 0.05, -0.9);
  CHECK_FALSE(r.passed);
  CHECK_FALSE(r.detail.empty());
}

TEST_CASE("suite names") {
  const auto names = suite_names();
  for (const char* s : {"tau1", "ballot", "laplace", "superadd", "berry", "stable", "fexp", "potter",
                        "reduction", "symmetry", "sandwich"}) {
    CHECK(std::find(names.begin(), names.end(), s) != names.end());
  }
  const auto b = run_suite("ballot", 0);
  REQUIRE(b.size() == 1);
  CHECK(b.front().passed);
  CHECK_THROWS(run_suite("nope", 0));
}
