#include "frogwb/frog_sim.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "frogwb/parallel.hpp"
#include "frogwb/rng.hpp"
#include "frogwb/walk_kernel.hpp"

namespace frogwb {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

struct Particle {
  std::uint64_t key;
  std::int64_t site;
  std::uint64_t t_act;
  std::uint64_t end;  // last time the particle may step, clipped to the horizon
  std::uint64_t t;    // current time
  std::int64_t pos;
};

// Word w of a walk stream, matching StepSource (counter starts at 1).
inline std::uint64_t walk_word(std::uint64_t key, std::uint64_t w) { return mix64(key + (w + 1) * kGolden); }

// Eight steps starting at step index s, lowest bit first.
inline std::uint8_t walk_byte(std::uint64_t key, std::uint64_t s) {
  const std::uint64_t w = s >> 6;
  const unsigned off = static_cast<unsigned>(s & 63);
  std::uint64_t bits = walk_word(key, w) >> off;
  if (off > 56) bits |= walk_word(key, w + 1) << (64 - off);
  return static_cast<std::uint8_t>(bits & 0xff);
}

// Advances p until it stands outside [lo, hi] or reaches p.end. Returns
// true if it left the interval.
bool scan(Particle& p, std::int64_t lo, std::int64_t hi) {
  while (p.t < p.end) {
    const std::uint64_t s = p.t - p.t_act;
    const std::uint8_t b = walk_byte(p.key, s);
    const std::uint64_t left = p.end - p.t;
    const auto& e = detail::kByteSteps[b];
    if (left >= 8 && p.pos + e.max_prefix <= hi && p.pos + e.min_prefix >= lo) {
      p.pos += e.total;
      p.t += 8;
      continue;
    }
    const int n = static_cast<int>(std::min<std::uint64_t>(8, left));
    for (int j = 0; j < n; ++j) {
      p.pos += ((b >> j) & 1) ? 1 : -1;
      ++p.t;
      if (p.pos > hi || p.pos < lo) return true;
    }
  }
  return false;
}

struct Event {
  std::uint64_t t;
  std::size_t idx;
  bool operator>(const Event& o) const { return t != o.t ? t > o.t : idx > o.idx; }
};

}  // namespace

void FrogConfig::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be positive");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");
}

FrogRunReport run_frog(const FrogConfig& config, std::uint64_t replicate) {
  config.validate();
  const std::uint64_t T = config.horizon;
  const std::uint64_t seed = config.seed;
  FrogRunReport rep;
  std::vector<Particle> particles;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue;
  std::vector<std::int64_t> active_diff(T + 2, 0);
  std::uint64_t last_alive = 0;
  std::int64_t lo = 0, hi = 0;

  auto activate_site = [&](std::int64_t site, std::uint64_t t) {
    const auto s = static_cast<std::uint64_t>(site);
    std::uint32_t count;
    CounterRng occ(seed, {static_cast<std::uint64_t>(Purpose::Occupation), replicate, s});
    const std::uint32_t eta = config.eta.sample(occ.uniform());
    count = (site == 0 && config.origin_count) ? *config.origin_count : eta;
    rep.occupation_sum += count;
    for (std::uint32_t i = 0; i < count; ++i) {
      CounterRng rng(seed, {static_cast<std::uint64_t>(Purpose::Edge), replicate, s, i});
      double uc = 0.0;
      const double u = rng.uniform_with_complement(uc);
      const double h = sample_edge_complement(config.edge, u, uc);
      const double lu = rng.uniform();
      const double log_p = std::log1p(-h);
      const LifetimeSample life =
          log_p < 0.0 ? sample_lifetime_log(config.gamma, log_p, lu, T + 1) : LifetimeSample{T + 1, true};
      const std::uint64_t death = t + life.steps;
      Particle p{stream_key({seed, static_cast<std::uint64_t>(Purpose::Walk), replicate, s, i}),
                 site, t, std::min(death, T), t, site};
      last_alive = std::max(last_alive, std::min(death, T));
      ++active_diff[t];
      --active_diff[std::min(death, T) + 1];
      ++rep.activated_particles;
      particles.push_back(p);
      if (scan(particles.back(), lo, hi)) queue.push({particles.back().t, particles.size() - 1});
    }
  };

  activate_site(0, 0);
  while (!queue.empty()) {
    const Event ev = queue.top();
    queue.pop();
    Particle& p = particles[ev.idx];
    assert(std::llabs(p.pos - p.site) <= static_cast<long long>(p.t - p.t_act));
    std::int64_t new_site = 0;
    bool expand = false;
    if (p.pos == hi + 1) {
      hi = p.pos;
      new_site = p.pos;
      expand = true;
    } else if (p.pos == lo - 1) {
      lo = p.pos;
      new_site = p.pos;
      expand = true;
    }
    const std::uint64_t t = p.t;
    // Rescan first: activation may reallocate the particle vector.
    if (scan(p, lo, hi)) queue.push({p.t, ev.idx});
    if (expand) activate_site(new_site, t);
  }

  rep.max_right = hi;
  rep.max_left = lo;
  rep.activated_sites = static_cast<std::uint64_t>(hi - lo + 1);
  std::int64_t running = 0;
  for (std::uint64_t t = 0; t <= T; ++t) {
    running += active_diff[t];
    rep.peak_active = std::max<std::uint64_t>(rep.peak_active, static_cast<std::uint64_t>(running));
  }
  if (rep.activated_particles > 0 && last_alive >= T) {
    rep.outcome = Outcome::SurvivedToHorizon;
  } else {
    rep.outcome = Outcome::ExtinctAt;
    rep.extinct_at = rep.activated_particles > 0 ? last_alive + 1 : 0;
  }
  return rep;
}

std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double ph = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (ph + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<FrogRunReport> run_frog_batch(const FrogConfig& config) {
  config.validate();
  std::vector<FrogRunReport> out(config.reps);
  parallel_blocks(config.reps, [&](std::size_t r) { out[r] = run_frog(config, r); });
  return out;
}

SurvivalEstimate survival_prob(const FrogConfig& config) {
  const auto reports = run_frog_batch(config);
  SurvivalEstimate est;
  est.reps = config.reps;
  for (const auto& r : reports) est.survived += r.outcome == Outcome::SurvivedToHorizon ? 1 : 0;
  est.estimate = static_cast<double>(est.survived) / static_cast<double>(est.reps);
  std::tie(est.ci_low, est.ci_high) = wilson_interval(est.survived, est.reps);
  return est;
}

std::vector<SweepRow> phase_sweep(const std::vector<double>& beta_grid, const std::vector<double>& gamma_grid,
                                  const FrogConfig& base) {
  if (beta_grid.empty() || gamma_grid.empty()) throw std::invalid_argument("sweep grids must be nonempty");
  std::vector<SweepRow> rows;
  for (double g : gamma_grid) {
    for (double b : beta_grid) {
      FrogConfig cfg = base;
      cfg.gamma = g;
      cfg.edge = EdgeLaw::beta(1.0, b);
      SweepRow row;
      row.beta = b;
      row.gamma = g;
      row.horizon = cfg.horizon;
      row.survival = survival_prob(cfg);
      row.verdict = classify_phase(g, cfg.edge, summarize(cfg.eta));
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace frogwb
