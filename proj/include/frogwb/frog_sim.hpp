#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frogwb/asymptotics.hpp"
#include "frogwb/distributions.hpp"

namespace frogwb {

struct FrogConfig {
  double gamma = 1.0;
  EdgeLaw edge = EdgeLaw::beta(1.0, 1.0);
  EtaLaw eta = EtaLaw::deterministic(1);
  std::uint64_t horizon = 4000;
  std::uint64_t reps = 400;
  std::uint64_t seed = 0;
  /// Replaces the eta draw at the origin when set (e.g. a single seeded
  /// particle with eta = Det(0) everywhere else).
  std::optional<std::uint32_t> origin_count;

  void validate() const;
};

enum class Outcome { ExtinctAt, SurvivedToHorizon };

struct FrogRunReport {
  Outcome outcome = Outcome::ExtinctAt;
  /// First time with no active alive particle (ExtinctAt only).
  std::uint64_t extinct_at = 0;
  std::int64_t max_right = 0;
  std::int64_t max_left = 0;  // leftmost visited site, <= 0
  std::uint64_t peak_active = 0;
  std::uint64_t activated_sites = 0;
  std::uint64_t activated_particles = 0;
  /// Sum of eta over visited sites, realized independently of the dynamics.
  std::uint64_t occupation_sum = 0;
};

/// One replicate. A particle activated at t_a with lifetime Xi is alive at
/// every t <= t_a + Xi and steps at t_a + 1, ..., t_a + Xi. Sites are
/// realized lazily from streams keyed by (seed, replicate, site), so the
/// environment does not depend on the horizon.
FrogRunReport run_frog(const FrogConfig& config, std::uint64_t replicate);

struct SurvivalEstimate {
  std::uint64_t reps = 0;
  std::uint64_t survived = 0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  /// Always true: survival to the horizon only bounds true survival from above.
  bool censored = true;
};

/// Wilson 95% score interval for k successes in n trials.
std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double z = 1.959963984540054);

SurvivalEstimate survival_prob(const FrogConfig& config);

/// Reports of replicates 0..reps-1, computed in parallel.
std::vector<FrogRunReport> run_frog_batch(const FrogConfig& config);

struct SweepRow {
  double beta = 0.0;
  double gamma = 0.0;
  SurvivalEstimate survival;
  PhaseVerdict verdict;
  std::uint64_t horizon = 0;
};

/// survival_prob on Beta(1, beta) for each grid point, plus the classifier verdict.
std::vector<SweepRow> phase_sweep(const std::vector<double>& beta_grid, const std::vector<double>& gamma_grid,
                                  const FrogConfig& base);

}  // namespace frogwb
