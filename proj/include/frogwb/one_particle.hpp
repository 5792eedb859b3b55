#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frogwb/distributions.hpp"

namespace frogwb {

enum class TailMethod { ExactQuadrature, DirectMC, RaoBlackwellMC };

std::string to_string(TailMethod m);
TailMethod tail_method_from_string(const std::string& s);

/// Estimate of P(D-> >= n) for one particle.
struct TailEstimate {
  std::int64_t n = 0;
  double value = 0.0;
  /// Certified bound (exact method) or standard error plus any cap bias (MC).
  double err = 0.0;
  TailMethod method = TailMethod::ExactQuadrature;
  std::uint64_t reps = 0;
  /// Exact: truncation point K. MC: unused.
  std::int64_t truncation = 0;
  /// MC: replicates whose lifetime (direct) or passage time (RB) hit the cap.
  std::uint64_t capped = 0;
  /// MC: per-replicate sample variance of the averaged quantity.
  double sample_variance = 0.0;
};

struct ExactOptions {
  /// Largest number of pmf terms a single n may need.
  std::int64_t max_terms = 100'000'000;
};

/// sum_k P(tau_n = k) M(k^gamma), truncated so that the certified remainder
/// P(tau_n > K) M(K^gamma) plus bracketing error stays below eps.
TailEstimate tail_exact(std::int64_t n, const EdgeLaw& edge, double gamma, double eps,
                        const ExactOptions& options = {});

/// Several levels in one pass; M is evaluated once per k and shared.
std::vector<TailEstimate> tail_exact_many(const std::vector<std::int64_t>& n_list,
                                          const EdgeLaw& edge, double gamma,
                                          const std::vector<double>& eps_list,
                                          const ExactOptions& options = {});

struct McOptions {
  /// Lifetimes above this are clamped; such replicates that have not yet
  /// reached n are counted as misses and reported in TailEstimate::capped.
  std::uint64_t lifetime_cap = 10'000'000;
};

/// Direct simulation: fraction of replicates whose walk reaches +n within Xi steps.
TailEstimate tail_mc(std::int64_t n, const EdgeLaw& edge, double gamma, std::uint64_t reps,
                     std::uint64_t seed, const McOptions& options = {});

struct RbOptions {
  /// Passage-time cap as a multiple of n^2.
  double cap_factor = 100.0;
};

/// Rao-Blackwellized estimator: averages M(tau_n^gamma) over simulated
/// first-passage times. Walk streams match tail_mc for the same seed.
TailEstimate tail_rb(std::int64_t n, const EdgeLaw& edge, double gamma, std::uint64_t reps,
                     std::uint64_t seed, const RbOptions& options = {});

/// Empirical P(D-> >= n) and P(D* >= n) for n = 1..n_max from one batch.
struct DisplacementTails {
  std::vector<double> right;  // index n - 1
  std::vector<double> star;
  std::uint64_t reps = 0;
  std::uint64_t censored = 0;
};
DisplacementTails displacement_tails(const EdgeLaw& edge, double gamma, std::int64_t n_max,
                                     std::uint64_t reps, std::uint64_t seed,
                                     const McOptions& options = {});

struct RatioPoint {
  std::int64_t n = 0;
  double ratio = 0.0;
  double err = 0.0;
  double normalization = 0.0;  // n^{-2 beta gamma} L(n^{2 gamma})
  TailEstimate tail;
};

/// n^{1 - 2 beta gamma} L(n^{2 gamma}) / n, the scale P(D-> >= n) is divided by.
double ratio_normalization(std::int64_t n, double beta, const SlowlyVarying& L, double gamma);

/// For ExactQuadrature, tolerance is the allowed error on the ratio scale;
/// for MC methods, reps is used and tolerance ignored.
std::vector<RatioPoint> ratio_curve(const std::vector<std::int64_t>& n_list, const EdgeLaw& edge,
                                    double gamma, TailMethod method, double tolerance,
                                    std::uint64_t reps, std::uint64_t seed);

}  // namespace frogwb
