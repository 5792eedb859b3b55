#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "frogwb/rng.hpp"

namespace frogwb {

/// Truncated law of tau_n, the first passage time of a simple symmetric
/// walk from 0 to +n. Only k = n, n+2, ..., <= K carry mass.
class FirstPassageTable {
 public:
  FirstPassageTable(std::int64_t n, std::int64_t K, std::vector<double> probs, double tail_mass);

  std::int64_t n() const { return n_; }
  std::int64_t K() const { return K_; }
  /// P(tau_n = k); zero off the support or beyond K.
  double prob(std::int64_t k) const;
  /// P(tau_n > K).
  double tail_mass() const { return tail_mass_; }
  /// Probabilities for k = n, n + 2, ..., in order.
  const std::vector<double>& probs() const { return probs_; }
  double total_mass() const;

  /// CSV with header "k,prob", one row per support point.
  void write_csv(std::ostream& os) const;

 private:
  std::int64_t n_;
  std::int64_t K_;
  std::vector<double> probs_;
  double tail_mass_;
};

/// P(tau_n = k) = (n/k) C(k, (k+n)/2) 2^-k. Exact integer arithmetic for
/// k <= 62, saddle-point binomial beyond.
double first_passage_prob(std::int64_t n, std::int64_t k);

/// P(tau_n > k) = P(-n <= S_k <= n - 1) by reflection.
double first_passage_survival(std::int64_t n, std::int64_t k);

FirstPassageTable first_passage_pmf(std::int64_t n, std::int64_t K);

/// Smallest K (same parity as n) with P(tau_n > K) <= eps.
std::int64_t truncation_for_tail(std::int64_t n, double eps);

/// Streams P(tau_n = k) for k = n, n+2, ... using the two-step ratio with a
/// periodic exact refresh.
class FirstPassageStream {
 public:
  FirstPassageStream(std::int64_t n, std::int64_t k_start);
  std::int64_t k() const { return k_; }
  double value() const { return value_; }
  void advance();

 private:
  std::int64_t n_;
  std::int64_t k_;
  double value_;
  int since_refresh_ = 0;
};

/// Exact P(tau_1 > t).
double tau1_survival(std::int64_t t);

/// f(s) = E[s^tau_1] = (1 - sqrt(1 - s^2)) / s on (0, 1].
double gen_func(double s);

struct Displacement {
  std::int64_t right = 0;  // max_{j <= Xi} S_j
  std::int64_t left = 0;   // max_{j <= Xi} -S_j
  std::int64_t star = 0;   // max(right, left)
  std::uint64_t lifetime = 0;
  bool lifetime_censored = false;
  bool truncated = false;  // walk stopped early at the stop level
};

struct WalkOptions {
  std::uint64_t lifetime_cap = 100'000'000;
  /// Stop once right >= stop_right (0 disables).
  std::int64_t stop_right = 0;
  /// Stop once both right and left reach stop_both (0 disables).
  std::int64_t stop_both = 0;
};

/// Draws Xi for survival parameter p (given as 1 - p for precision) and runs
/// Xi steps of a fresh walk keyed by walk_key.
Displacement simulate_displacement(double gamma, double one_minus_p, double lifetime_u,
                                   std::uint64_t walk_key, const WalkOptions& options);

/// Convenience form drawing the lifetime variate from rng.
Displacement simulate_displacement(double gamma, double p, CounterRng& rng,
                                   const WalkOptions& options = {});

struct PassageSample {
  std::uint64_t time = 0;
  bool capped = false;  // walk did not reach n within cap steps
  std::int64_t position_at_cap = 0;
};

/// Runs a walk keyed by walk_key until it first hits +n or cap steps pass.
PassageSample sample_first_passage(std::int64_t n, std::uint64_t cap, std::uint64_t walk_key);

}  // namespace frogwb
