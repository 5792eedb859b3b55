#include <doctest.h>

#include <cmath>

#include "frogwb/frog_sim.hpp"
#include "frogwb/parallel.hpp"

using namespace frogwb;
using doctest::Approx;

namespace {

FrogConfig small_config() {
  FrogConfig c;
  c.horizon = 500;
  c.reps = 64;
  c.seed = 12;
  return c;
}

}  // namespace

TEST_CASE("wilson interval") {
  const auto [lo, hi] = wilson_interval(0, 400);
  CHECK(lo == 0.0);
  CHECK(hi == Approx(0.009512).epsilon(1e-3));
  const auto [a, b] = wilson_interval(200, 400);
  CHECK(a < 0.5);
  CHECK(b > 0.5);
  CHECK(a + b == Approx(1.0).epsilon(1e-14));
  CHECK(wilson_interval(400, 400).second == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("config validation") {
  FrogConfig c = small_config();
  CHECK_NOTHROW(c.validate());
  c.reps = 0;
  CHECK_THROWS(c.validate());
  c = small_config();
  c.horizon = 0;
  CHECK_THROWS(c.validate());
  c = small_config();
  c.gamma = -1.0;
  CHECK_THROWS(c.validate());
}

TEST_CASE("single replicate invariants") {
  const FrogConfig c = small_config();
  for (std::uint64_t r = 0; r < 20; ++r) {
    const auto rep = run_frog(c, r);
    CHECK(rep.max_left <= 0);
    CHECK(rep.max_right >= 0);
    CHECK(rep.activated_sites == static_cast<std::uint64_t>(rep.max_right - rep.max_left + 1));
    CHECK(rep.activated_particles == rep.occupation_sum);
    CHECK(rep.peak_active <= rep.activated_particles);
    if (rep.outcome == Outcome::ExtinctAt) CHECK(rep.extinct_at <= c.horizon);
    // Same replicate, same result.
    const auto again = run_frog(c, r);
    CHECK(again.extinct_at == rep.extinct_at);
    CHECK(again.max_right == rep.max_right);
  }
}

TEST_CASE("no particles means immediate extinction") {
  FrogConfig c = small_config();
  c.eta = EtaLaw::deterministic(0);
  const auto rep = run_frog(c, 0);
  CHECK(rep.outcome == Outcome::ExtinctAt);
  CHECK(rep.activated_particles == 0);
  CHECK(rep.extinct_at == 0);
}

TEST_CASE("a lone particle reproduces its own displacement") {
  // With eta = 0 away from the origin the range is that of one walk.
  FrogConfig c = small_config();
  c.eta = EtaLaw::deterministic(0);
  c.origin_count = 1;
  c.horizon = 1'000'000;
  for (std::uint64_t r = 0; r < 20; ++r) {
    const auto rep = run_frog(c, r);
    CHECK(rep.activated_particles == 1);
    CHECK(rep.peak_active == 1);
    CHECK(rep.outcome == Outcome::ExtinctAt);
  }
}

TEST_CASE("environment does not depend on the horizon") {
  FrogConfig a = small_config();
  a.edge = EdgeLaw::beta(1.0, 2.0);
  FrogConfig b = a;
  b.horizon = 5000;
  for (std::uint64_t r = 0; r < 20; ++r) {
    const auto ra = run_frog(a, r);
    const auto rb = run_frog(b, r);
    if (ra.outcome == Outcome::ExtinctAt) {
      CHECK(rb.outcome == Outcome::ExtinctAt);
      CHECK(rb.extinct_at == ra.extinct_at);
      CHECK(rb.max_right == ra.max_right);
    }
  }
}

TEST_CASE("batches are reproducible across thread counts") {
  FrogConfig c = small_config();
  c.edge = EdgeLaw::beta(1.0, 0.5);
  set_max_threads(1);
  const auto one = survival_prob(c);
  set_max_threads(4);
  const auto four = survival_prob(c);
  set_max_threads(0);
  CHECK(one.survived == four.survived);
  CHECK(one.ci_low == four.ci_low);
  CHECK(one.censored);
  CHECK(one.estimate == Approx(double(one.survived) / double(one.reps)).epsilon(1e-15));
}

TEST_CASE("sweep rows carry verdicts") {
  FrogConfig c = small_config();
  c.reps = 16;
  const auto rows = phase_sweep({0.2, 2.0}, {1.0}, c);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].verdict.verdict == Verdict::SurvivesWP);
  CHECK(rows[1].verdict.verdict == Verdict::ExtinctAS);
  CHECK(rows[1].horizon == c.horizon);
  CHECK(rows[0].survival.survived >= rows[1].survival.survived);
}
