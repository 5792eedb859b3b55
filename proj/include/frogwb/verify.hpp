#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frogwb/distributions.hpp"
#include "frogwb/slowly_varying.hpp"

namespace frogwb {

struct CheckResult {
  std::string name;
  double target = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

/// t^(1/2) P(tau_1 > t) at t = 1e2, 1e3, 1e4 against sqrt(2/pi).
CheckResult check_tau1_tail();

/// Ballot formula against a path-counting DP for n <= n_max, k <= k_max.
CheckResult check_ballot_enumeration(int n_max = 6, int k_max = 24);

/// (1 - E exp(-a tau_1^gamma)) / a^(1/(2 gamma)) at a = 1e-4, 1e-5, 1e-6,
/// extrapolated against Gamma(1 - 1/(2 gamma)) sqrt(2/pi).
CheckResult check_laplace_limit(double gamma = 2.0);

/// (sum x_i)^gamma >= sum x_i^gamma on random vectors, gamma in {1, 1.5, 2, 5}.
CheckResult check_superadditivity(std::uint64_t trials, std::uint64_t seed);

/// Exact P(tau_n < c0 n^2) >= theta(c0).
CheckResult check_berry_esseen_bound(double c0, std::int64_t n);
/// The nine points {0.5, 1, 2} x {50, 100, 200}.
CheckResult check_berry_esseen_grid();

/// Monte Carlo E[S^-theta] against Gamma(theta/gamma) / (gamma Gamma(theta)).
CheckResult check_stable_moments(double gamma, double theta_exp, std::uint64_t reps, std::uint64_t seed);

/// E[exp(-S_a)] = exp(-a) with S_a = a^(1/gamma) S_1, a in {0.5, 1, 2}.
CheckResult check_stable_scaling(double gamma, std::uint64_t reps, std::uint64_t seed);

/// E[exp(-t S_1)] = exp(-t^gamma) at t in {1, 4}.
CheckResult check_bernstein_mixture(double gamma, std::uint64_t reps, std::uint64_t seed);

/// |log f(e^-u) + sqrt(2u)| <= C u^(3/2) and the two-sided exponential envelope.
CheckResult check_fexp_bounds();

/// Uniform convergence of L(xy)/L(x) on [0.5, 2] and a Potter bound spot check.
CheckResult check_potter_uct(const SlowlyVarying& L);

/// tail_mc against tail_exact for each n, within 3 standard errors.
CheckResult check_reduction_identity(const std::vector<std::int64_t>& n_list, const EdgeLaw& edge,
                                     double gamma, std::uint64_t reps, std::uint64_t seed);

/// P(D-> >= n) >= P(D* >= n) / 2 - 3 combined standard errors for n <= n_max.
CheckResult check_symmetry(const EdgeLaw& edge, double gamma, std::int64_t n_max, std::uint64_t reps,
                           std::uint64_t seed);

/// Exact ratio curve for a Beta(1, beta) law against [K_lower, K_up] (1 +- band_tol)
/// over the top decade of n_list. ratio_tol is the certified error on the ratio scale.
CheckResult check_ratio_sandwich(double gamma, double beta, const std::vector<std::int64_t>& n_list,
                                 double ratio_tol, double band_tol);

/// Checks by suite name; "all" runs everything.
std::vector<std::string> suite_names();
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed);
std::vector<CheckResult> run_all(std::uint64_t seed);

}  // namespace frogwb
