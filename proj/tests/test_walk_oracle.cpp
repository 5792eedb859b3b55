#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <vector>

#include "frogwb/rng.hpp"
#include "frogwb/walk_oracle.hpp"

using namespace frogwb;
using doctest::Approx;

namespace {

// P(tau_n = k) by brute-force dynamic programming over positions.
std::vector<double> passage_dp(int n, int K) {
  std::vector<double> out(K + 1, 0.0);
  std::vector<double> cur(2 * K + 3, 0.0), next(cur.size());
  const int off = K + 1;
  cur[off] = 1.0;
  for (int k = 1; k <= K; ++k) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int x = -K; x < n; ++x) {
      const double m = cur[x + off];
      if (m == 0.0) continue;
      next[x + 1 + off] += 0.5 * m;
      next[x - 1 + off] += 0.5 * m;
    }
    out[k] = next[n + off];
    next[n + off] = 0.0;
    std::swap(cur, next);
  }
  return out;
}

}  // namespace

TEST_CASE("first passage pmf matches dynamic programming") {
  for (int n : {1, 2, 5, 9}) {
    const auto dp = passage_dp(n, 60);
    for (int k = 0; k <= 60; ++k) CHECK(first_passage_prob(n, k) == Approx(dp[k]).epsilon(1e-15));
  }
  CHECK(first_passage_prob(2, 4) == 0.125);
  CHECK(first_passage_prob(0, 0) == 1.0);
  CHECK_THROWS(first_passage_prob(-1, 3));
}

TEST_CASE("saddle-point pmf continues the exact branch smoothly") {
  const auto dp = passage_dp(3, 200);
  for (int k = 63; k <= 200; k += 2) CHECK(first_passage_prob(3, k) == Approx(dp[k]).epsilon(1e-13));
}

TEST_CASE("survival function") {
  // Reference: mpmath.
  // P(tau_100 < 1e4) = 1 - P(tau_100 > 9998).
  CHECK(first_passage_survival(100, 9998) == Approx(1.0 - 0.31728630970157239).epsilon(1e-13));
  CHECK(std::sqrt(1e4) * tau1_survival(10000) == Approx(0.79786461393821538).epsilon(1e-13));
  CHECK(first_passage_survival(4, 3) == 1.0);
  double acc = 0.0;
  for (int k = 1; k <= 41; k += 2) acc += first_passage_prob(1, k);
  CHECK(tau1_survival(41) == Approx(1.0 - acc).epsilon(1e-14));
}

TEST_CASE("tables, truncation and streaming") {
  const auto t = first_passage_pmf(4, 400);
  CHECK(t.prob(4) == 1.0 / 16.0);
  CHECK(t.prob(5) == 0.0);
  CHECK(t.total_mass() == Approx(1.0).epsilon(1e-13));
  std::ostringstream os;
  t.write_csv(os);
  CHECK(os.str().rfind("k,prob\n4,", 0) == 0);

  const auto K = truncation_for_tail(10, 1e-3);
  CHECK(first_passage_survival(10, K) <= 1e-3);
  CHECK(first_passage_survival(10, K - 2) > 1e-3);

  FirstPassageStream s(7, 7);
  for (int i = 0; i < 5000; ++i) {
    CHECK(s.value() == Approx(first_passage_prob(7, s.k())).epsilon(1e-12));
    s.advance();
  }
}

TEST_CASE("generating function") {
  CHECK(gen_func(0.7) == Approx(0.40836736735102143).epsilon(1e-14));
  CHECK(gen_func(1.0) == 1.0);
  double series = 0.0;
  for (int k = 1; k < 400; k += 2) series += first_passage_prob(1, k) * std::pow(0.5, k);
  CHECK(gen_func(0.5) == Approx(series).epsilon(1e-13));
  CHECK_THROWS(gen_func(0.0));
}

TEST_CASE("simulated passage times follow the pmf") {
  const int reps = 200000;
  int hits3 = 0, capped = 0;
  for (int r = 0; r < reps; ++r) {
    const auto p = sample_first_passage(1, 1000, stream_key({17, static_cast<std::uint64_t>(r)}));
    hits3 += p.time == 3;
    capped += p.capped;
  }
  const double p3 = first_passage_prob(1, 3);
  CHECK(std::fabs(hits3 / double(reps) - p3) <= 4.5 * std::sqrt(p3 * (1 - p3) / reps));
  const double pc = first_passage_survival(1, 1000);
  CHECK(std::fabs(capped / double(reps) - pc) <= 4.5 * std::sqrt(pc * (1 - pc) / reps));
}

TEST_CASE("displacement respects the lifetime and stop levels") {
  WalkOptions o;
  o.lifetime_cap = 1000;
  for (int r = 0; r < 200; ++r) {
    const auto d = simulate_displacement(1.0, 0.01, 0.3, stream_key({5, static_cast<std::uint64_t>(r)}), o);
    CHECK(d.right >= 0);
    CHECK(d.left >= 0);
    CHECK(d.star == std::max(d.right, d.left));
    CHECK(d.right + d.left <= static_cast<std::int64_t>(d.lifetime));
  }
  // A zero lifetime never moves.
  const auto z = simulate_displacement(1.0, 0.999999, 0.5, 1, o);
  CHECK(z.lifetime == 0);
  CHECK(z.star == 0);
  o.stop_right = 3;
  o.lifetime_cap = 1'000'000;
  const auto s = simulate_displacement(1.0, 1e-9, 0.5, 2, o);
  CHECK(s.right >= 3);
  CHECK(s.truncated);
}
