#include <doctest.h>

#include <cmath>
#include <vector>

#include "frogwb/distributions.hpp"
#include "frogwb/rng.hpp"

using namespace frogwb;
using doctest::Approx;

TEST_CASE("discrete Weibull survival and sampler agree") {
  const LifetimeLaw law(1.5);
  CHECK(dw_survival(law, 0.9, 0) == 1.0);
  CHECK(dw_survival(law, 0.9, 4) == Approx(std::pow(0.9, 8.0)).epsilon(1e-14));

  CounterRng rng(11, {1});
  const int reps = 200000;
  std::vector<int> at_least(6, 0);
  for (int i = 0; i < reps; ++i) {
    const auto s = sample_lifetime(law, 0.8, rng.uniform(), 1000);
    for (std::uint64_t k = 0; k < at_least.size(); ++k) at_least[k] += s.steps >= k;
  }
  for (std::uint64_t k = 0; k < at_least.size(); ++k) {
    const double p = dw_survival(law, 0.8, k);
    const double se = std::sqrt(p * (1 - p) / reps) + 1e-12;
    CHECK(std::fabs(at_least[k] / double(reps) - p) <= 4.5 * se);
  }
}

TEST_CASE("lifetime sampler censors at the cap and rejects bad input") {
  const auto s = sample_lifetime_log(1.0, -1e-12, 0.5, 1000);
  CHECK(s.censored);
  CHECK(s.steps == 1000);
  CHECK_FALSE(sample_lifetime_log(1.0, -1.0, 0.5, 1000).censored);
  CHECK_THROWS(sample_lifetime(LifetimeLaw(1.0), 1.0, 0.5, 10));
  CHECK_THROWS(sample_lifetime_log(1.0, -1.0, 0.0, 10));
  CHECK_THROWS(LifetimeLaw(0.0));
}

TEST_CASE("Beta edge law") {
  const auto e = EdgeLaw::beta(1.0, 0.5);
  CHECK(e.regime() == EdgeRegime::Regular);
  CHECK(*e.beta_exponent() == 0.5);
  CHECK((*e.L_spec())(10.0) == Approx(0.5).epsilon(1e-14));
  CHECK(e.cdf(0.75) == Approx(1.0 - std::sqrt(0.25)).epsilon(1e-14));
  CHECK(e.quantile(0.5) == Approx(0.75).epsilon(1e-14));
  CHECK(e.quantile_complement(1.0 - 1e-18, 1e-18) == Approx(1e-36).epsilon(1e-12));
  CHECK(e.density(0.75) == Approx(0.5 / std::sqrt(0.25)).epsilon(1e-14));
  CHECK(e.support_max() == 1.0);
  CHECK_THROWS(EdgeLaw::beta(1.0, 0.0));
  // M(s) = Gamma(s + 1) Gamma(b + 1) / Gamma(s + b + 1) for Beta(1, b).
  for (double s : {0.5, 3.0, 100.0, 1e6}) {
    const double want = std::exp(std::lgamma(s + 1) + std::lgamma(1.5) - std::lgamma(s + 1.5));
    CHECK(fractional_moment(e, s) == Approx(want).epsilon(1e-12));
  }
  CHECK(fractional_moment(e, 0.0) == 1.0);
}

TEST_CASE("closed-form and quadrature moments agree for Beta laws") {
  for (auto [a, b] : {std::pair{1.0, 1.0}, {2.0, 3.0}, {1.0, 0.25}, {0.5, 2.0}}) {
    const auto e = EdgeLaw::beta(a, b);
    for (double s : {0.3, 5.0, 1e3, 1e6}) {
      const auto q = fractional_moment_quadrature(e, s);
      CHECK(q.abs_error <= 1e-10);
      CHECK(q.value == Approx(fractional_moment(e, s)).epsilon(1e-8));
    }
  }
}

TEST_CASE("log-corrected law") {
  const auto e = EdgeLaw::log_corrected(1.0);
  CHECK(e.regime() == EdgeRegime::LogCorrected);
  CHECK(*e.beta_exponent() == 0.0);
  CHECK(e.cdf(e.quantile(0.3)) == Approx(0.3).epsilon(1e-12));
  // 1 - quantile(1 - x) = exp(1 - 1/x).
  CHECK(e.quantile_complement(0.9, 0.1) == Approx(std::exp(-9.0)).epsilon(1e-13));
  // M(s) ~ 1 / log s.
  const double m = fractional_moment(e, 1e8);
  CHECK(m * std::log(1e8) > 0.8);
  CHECK(m * std::log(1e8) < 1.2);
  CHECK(fractional_moment(e, 1.0) < 1.0);
}

TEST_CASE("truncated law") {
  const auto e = EdgeLaw::truncated(EdgeLaw::beta(1.0, 1.0), 0.5);
  CHECK(e.regime() == EdgeRegime::NoEdge);
  CHECK_FALSE(e.beta_exponent().has_value());
  CHECK(e.support_max() == 0.5);
  CHECK(e.cdf(0.25) == Approx(0.5).epsilon(1e-14));
  CHECK(e.quantile(0.5) == Approx(0.25).epsilon(1e-14));
  // Uniform on (0, 1/2): M(s) = 2^-s / (s + 1).
  CHECK(fractional_moment(e, 3.0) == Approx(std::pow(0.5, 3.0) / 4.0).epsilon(1e-10));
  CHECK_THROWS(EdgeLaw::truncated(EdgeLaw::beta(1.0, 1.0), 1.0));
}

TEST_CASE("tabulated law") {
  const auto e = EdgeLaw::tabulated({0.0, 0.5, 1.0}, {1.0, 1.0, 1.0});
  CHECK(e.regime() == EdgeRegime::Regular);
  CHECK_FALSE(e.beta_exponent().has_value());
  CHECK(e.cdf(0.3) == Approx(0.3).epsilon(1e-14));
  CHECK(e.quantile(0.7) == Approx(0.7).epsilon(1e-12));
  CHECK(fractional_moment(e, 4.0) == Approx(0.2).epsilon(1e-10));
  // Triangular density 2u.
  const auto t = EdgeLaw::tabulated({0.0, 1.0}, {0.0, 2.0}, 1.0, SlowlyVarying::constant(2.0));
  CHECK(t.quantile(0.25) == Approx(0.5).epsilon(1e-12));
  CHECK(*t.beta_exponent() == 1.0);
  CHECK_THROWS(EdgeLaw::tabulated({0.0, 1.0}, {1.0, 2.0}));
  CHECK_THROWS(EdgeLaw::tabulated({0.0, 0.0}, {1.0, 1.0}));
}

TEST_CASE("edge sampling matches the cdf") {
  const auto e = EdgeLaw::beta(2.0, 3.0);
  CounterRng rng(3, {static_cast<std::uint64_t>(Purpose::Edge)});
  const int reps = 100000;
  int below = 0;
  for (int i = 0; i < reps; ++i) {
    double uc = 0.0;
    const double u = rng.uniform_with_complement(uc);
    const double v = sample_edge(e, u);
    CHECK(sample_edge_complement(e, u, uc) == Approx(1.0 - v).epsilon(1e-9));
    below += v <= 0.4;
  }
  const double p = e.cdf(0.4);
  CHECK(std::fabs(below / double(reps) - p) <= 4.5 * std::sqrt(p * (1 - p) / reps));
}

TEST_CASE("stable subordinator Laplace transform") {
  const double g = 0.5;
  CounterRng rng(5, {static_cast<std::uint64_t>(Purpose::Stable)});
  const int reps = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < reps; ++i) {
    const double x = std::exp(-sample_stable_subordinator(g, rng.uniform(), rng.exponential()));
    s += x;
    s2 += x * x;
  }
  const double mean = s / reps;
  const double se = std::sqrt((s2 / reps - mean * mean) / reps);
  CHECK(std::fabs(mean - std::exp(-1.0)) <= 4.5 * se);
}

TEST_CASE("eta laws") {
  const auto d = EtaLaw::deterministic(3);
  CHECK(d.mean() == 3.0);
  CHECK(d.prob_zero() == 0.0);
  CHECK(d.sample(0.42) == 3u);
  const auto p = EtaLaw::poisson(2.0);
  CHECK(p.mean() == 2.0);
  CHECK(p.prob_zero() == Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(p.sample(std::exp(-2.0) * 0.5) == 0u);
  const auto g = EtaLaw::geometric(0.25);
  CHECK(g.mean() == Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(g.prob_zero() == Approx(0.75).epsilon(1e-14));
  CounterRng rng(9, {static_cast<std::uint64_t>(Purpose::Occupation)});
  double s = 0.0;
  for (int i = 0; i < 100000; ++i) s += p.sample(rng.uniform());
  CHECK(s / 100000 == Approx(2.0).epsilon(0.02));
  CHECK_THROWS(EtaLaw::poisson(-1.0));
  CHECK_THROWS(EtaLaw::geometric(1.0));
}
