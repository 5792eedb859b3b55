#include "frogwb/one_particle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "frogwb/parallel.hpp"
#include "frogwb/rng.hpp"
#include "frogwb/special.hpp"
#include "frogwb/walk_oracle.hpp"

namespace frogwb {

namespace {

constexpr std::uint64_t kRepsPerBlock = 4096;
constexpr std::int64_t kTermsPerBlock = 1 << 18;
constexpr std::int64_t kDenseGrid = 4096;

double moment_at_k(const EdgeLaw& edge, double gamma, std::int64_t k) {
  return fractional_moment(edge, std::pow(static_cast<double>(k), gamma));
}

// Values of M(k^gamma) for the exact and Rao-Blackwell sums. Beta laws are
// evaluated in closed form at every k. Other laws are evaluated by
// quadrature on a grid (every k up to kDenseGrid, geometric beyond) and
// bracketed between grid neighbours, since M is nonincreasing.
class MomentCache {
 public:
  MomentCache(const EdgeLaw& edge, double gamma, std::int64_t k_max, double ratio)
      : edge_(edge), gamma_(gamma), exact_(edge.is_beta()) {
    if (exact_) return;
    std::int64_t k = 0;
    while (true) {
      grid_.push_back(k);
      if (k >= k_max) break;
      std::int64_t next = k < kDenseGrid ? k + 1
                                         : static_cast<std::int64_t>(std::ceil(static_cast<double>(k) * ratio));
      k = std::min(std::max(next, k + 1), k_max);
    }
    values_.assign(grid_.size(), 0.0);
    const std::size_t blocks = (grid_.size() + 63) / 64;
    parallel_blocks(blocks, [&](std::size_t b) {
      const std::size_t end = std::min(grid_.size(), (b + 1) * 64);
      for (std::size_t i = b * 64; i < end; ++i) values_[i] = moment_at_k(edge_, gamma_, grid_[i]);
    });
  }

  bool exact() const { return exact_; }

  double exact_value(std::int64_t k) const {
    const auto& f = std::get<EdgeLaw::BetaFamily>(edge_.family());
    if (k == 0) return 1.0;
    const double s = std::pow(static_cast<double>(k), gamma_);
    return std::exp(log_beta_moment(f.a, f.b, s));
  }

  std::size_t locate(std::int64_t k) const {
    auto it = std::upper_bound(grid_.begin(), grid_.end(), k);
    return static_cast<std::size_t>(it - grid_.begin()) - 1;
  }

  /// Bracket [lower, upper] for M(k^gamma) given j = locate(k).
  std::pair<double, double> bracket(std::int64_t k, std::size_t j) const {
    if (grid_[j] == k || j + 1 >= grid_.size()) return {values_[j], values_[j]};
    return {values_[j + 1], values_[j]};
  }

  std::pair<double, double> bracket(std::int64_t k) const {
    if (exact_) {
      const double v = exact_value(k);
      return {v, v};
    }
    return bracket(k, locate(k));
  }

  const std::vector<std::int64_t>& grid() const { return grid_; }

 private:
  const EdgeLaw& edge_;
  double gamma_;
  bool exact_;
  std::vector<std::int64_t> grid_;
  std::vector<double> values_;
};

std::int64_t fix_parity(std::int64_t n, std::int64_t k) { return ((k - n) & 1) ? k + 1 : k; }

// Smallest K (parity of n) with P(tau_n > K) M(K^gamma) <= target.
std::int64_t find_truncation(std::int64_t n, const EdgeLaw& edge, double gamma, double target,
                             std::int64_t k_limit) {
  auto bound = [&](std::int64_t K) {
    return first_passage_survival(n, K) * moment_at_k(edge, gamma, K);
  };
  std::int64_t hi = n;
  if (bound(hi) <= target) return hi;
  std::int64_t lo = hi;
  while (bound(hi) > target) {
    lo = hi;
    if (hi > k_limit) {
      throw std::runtime_error("tail_exact: truncation for n=" + std::to_string(n) +
                               " exceeds the term cap");
    }
    hi = fix_parity(n, hi * 2);
  }
  while (hi - lo > 2) {
    const std::int64_t mid = fix_parity(n, lo + (hi - lo) / 2);
    if (mid >= hi || mid <= lo) break;
    if (bound(mid) <= target) hi = mid; else lo = mid;
  }
  return hi;
}

void require_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::domain_error("gamma must be > 0");
}

}  // namespace

std::string to_string(TailMethod m) {
  switch (m) {
    case TailMethod::ExactQuadrature: return "exact";
    case TailMethod::DirectMC: return "mc";
    case TailMethod::RaoBlackwellMC: return "rb";
  }
  return "?";
}

TailMethod tail_method_from_string(const std::string& s) {
  if (s == "exact") return TailMethod::ExactQuadrature;
  if (s == "mc") return TailMethod::DirectMC;
  if (s == "rb") return TailMethod::RaoBlackwellMC;
  throw std::invalid_argument("unknown tail method '" + s + "' (exact|mc|rb)");
}

std::vector<TailEstimate> tail_exact_many(const std::vector<std::int64_t>& n_list,
                                          const EdgeLaw& edge, double gamma,
                                          const std::vector<double>& eps_list,
                                          const ExactOptions& options) {
  require_gamma(gamma);
  if (n_list.size() != eps_list.size()) throw std::invalid_argument("n_list and eps_list differ in size");
  const std::size_t m = n_list.size();
  std::vector<TailEstimate> out(m);
  const bool beta = edge.is_beta();
  // Non-Beta laws split the budget between truncation and bracketing.
  const double trunc_share = beta ? 0.99 : 0.5;

  std::vector<std::int64_t> K(m, 0);
  std::int64_t k_min = 0, k_max = 0;
  bool any = false;
  for (std::size_t i = 0; i < m; ++i) {
    const std::int64_t n = n_list[i];
    if (n < 0) throw std::domain_error("displacement level must be >= 0");
    if (!(eps_list[i] > 0.0)) throw std::domain_error("eps must be > 0");
    out[i].n = n;
    out[i].method = TailMethod::ExactQuadrature;
    if (n == 0) {
      out[i].value = 1.0;
      continue;
    }
    const std::int64_t limit = n + 2 * options.max_terms;
    K[i] = find_truncation(n, edge, gamma, trunc_share * eps_list[i], limit);
    if ((K[i] - n) / 2 + 1 > options.max_terms) {
      throw std::runtime_error("tail_exact: truncation for n=" + std::to_string(n) +
                               " exceeds the term cap");
    }
    out[i].truncation = K[i];
    k_min = any ? std::min(k_min, n) : n;
    k_max = any ? std::max(k_max, K[i]) : K[i];
    any = true;
  }
  if (!any) return out;

  double ratio = 1.0 + 1.0 / 256.0;
  for (int attempt = 0;; ++attempt) {
    MomentCache cache(edge, gamma, k_max, ratio);
    const std::int64_t span = k_max - k_min + 1;
    const std::size_t blocks = static_cast<std::size_t>((span + kTermsPerBlock - 1) / kTermsPerBlock);
    std::vector<std::vector<double>> lower(m, std::vector<double>(blocks, 0.0));
    std::vector<std::vector<double>> upper(m, std::vector<double>(blocks, 0.0));

    parallel_blocks(blocks, [&](std::size_t b) {
      const std::int64_t start = k_min + static_cast<std::int64_t>(b) * kTermsPerBlock;
      const std::int64_t end = std::min(k_max, start + kTermsPerBlock - 1);
      std::vector<std::optional<FirstPassageStream>> streams(m);
      std::vector<double> lo(m, 0.0), hi(m, 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        if (n_list[i] == 0 || K[i] < start) continue;
        streams[i].emplace(n_list[i], std::max(start, n_list[i]));
      }
      std::size_t j = cache.exact() ? 0 : cache.locate(start);
      for (std::int64_t k = start; k <= end; ++k) {
        bool need = false;
        for (std::size_t i = 0; i < m; ++i) {
          if (streams[i] && streams[i]->k() == k && k <= K[i]) {
            need = true;
            break;
          }
        }
        if (!need) continue;
        double m_lo, m_hi;
        if (cache.exact()) {
          m_lo = m_hi = cache.exact_value(k);
        } else {
          while (j + 1 < cache.grid().size() && cache.grid()[j + 1] <= k) ++j;
          std::tie(m_lo, m_hi) = cache.bracket(k, j);
        }
        for (std::size_t i = 0; i < m; ++i) {
          auto& s = streams[i];
          if (!s || s->k() != k || k > K[i]) continue;
          const double p = s->value();
          lo[i] += p * m_lo;
          hi[i] += p * m_hi;
          s->advance();
        }
      }
      for (std::size_t i = 0; i < m; ++i) {
        lower[i][b] = lo[i];
        upper[i][b] = hi[i];
      }
    });

    bool refine = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (n_list[i] == 0) continue;
      const double l = pairwise_sum(lower[i]);
      const double h = pairwise_sum(upper[i]);
      const double remainder =
          first_passage_survival(n_list[i], K[i]) * moment_at_k(edge, gamma, K[i]);
      const double half_gap = 0.5 * (h - l);
      out[i].value = std::clamp(0.5 * (l + h), 0.0, 1.0);
      // Rounding of ~K products with relative error near 1e-13 each.
      out[i].err = remainder + half_gap + 1e-12 * out[i].value;
      if (!beta) out[i].err += 1e-10;
      if (!beta && half_gap > (1.0 - trunc_share) * eps_list[i] - 1e-10) refine = true;
    }
    if (!refine || attempt >= 6) break;
    ratio = 1.0 + (ratio - 1.0) / 4.0;
  }
  return out;
}

TailEstimate tail_exact(std::int64_t n, const EdgeLaw& edge, double gamma, double eps,
                        const ExactOptions& options) {
  return tail_exact_many({n}, edge, gamma, {eps}, options).front();
}

TailEstimate tail_mc(std::int64_t n, const EdgeLaw& edge, double gamma, std::uint64_t reps,
                     std::uint64_t seed, const McOptions& options) {
  require_gamma(gamma);
  if (reps < 1) throw std::domain_error("reps must be >= 1");
  if (n < 0) throw std::domain_error("displacement level must be >= 0");
  TailEstimate est;
  est.n = n;
  est.method = TailMethod::DirectMC;
  est.reps = reps;
  if (n == 0) {
    est.value = 1.0;
    return est;
  }
  const std::size_t blocks = static_cast<std::size_t>((reps + kRepsPerBlock - 1) / kRepsPerBlock);
  std::vector<std::uint64_t> hits(blocks, 0), capped(blocks, 0);
  WalkOptions wopt;
  wopt.lifetime_cap = options.lifetime_cap;
  wopt.stop_right = n;
  parallel_blocks(blocks, [&](std::size_t b) {
    const std::uint64_t r0 = b * kRepsPerBlock;
    const std::uint64_t r1 = std::min<std::uint64_t>(reps, r0 + kRepsPerBlock);
    for (std::uint64_t r = r0; r < r1; ++r) {
      CounterRng rng(seed, {static_cast<std::uint64_t>(Purpose::Edge), r});
      double uc = 0.0;
      const double u = rng.uniform_with_complement(uc);
      const double h = sample_edge_complement(edge, u, uc);
      const double lu = rng.uniform();
      const auto d = simulate_displacement(gamma, h, lu,
                                           stream_key({seed, static_cast<std::uint64_t>(Purpose::Walk), r}),
                                           wopt);
      if (d.right >= n) {
        ++hits[b];
      } else if (d.lifetime_censored) {
        ++capped[b];
      }
    }
  });
  std::uint64_t total = 0, cap = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    total += hits[b];
    cap += capped[b];
  }
  const double v = static_cast<double>(total) / static_cast<double>(reps);
  est.value = v;
  est.sample_variance = reps > 1 ? v * (1.0 - v) * static_cast<double>(reps) / static_cast<double>(reps - 1) : 0.0;
  est.err = std::sqrt(v * (1.0 - v) / static_cast<double>(reps));
  est.capped = cap;
  return est;
}

TailEstimate tail_rb(std::int64_t n, const EdgeLaw& edge, double gamma, std::uint64_t reps,
                     std::uint64_t seed, const RbOptions& options) {
  require_gamma(gamma);
  if (reps < 1) throw std::domain_error("reps must be >= 1");
  if (n < 0) throw std::domain_error("displacement level must be >= 0");
  TailEstimate est;
  est.n = n;
  est.method = TailMethod::RaoBlackwellMC;
  est.reps = reps;
  if (n == 0) {
    est.value = 1.0;
    return est;
  }
  const double nn = static_cast<double>(n);
  const auto cap = static_cast<std::uint64_t>(std::max(nn, options.cap_factor * nn * nn));
  MomentCache cache(edge, gamma, static_cast<std::int64_t>(cap), 1.0 + 1.0 / 1024.0);
  const double m_cap = cache.bracket(static_cast<std::int64_t>(cap)).second;

  const std::size_t blocks = static_cast<std::size_t>((reps + kRepsPerBlock - 1) / kRepsPerBlock);
  std::vector<double> sum(blocks, 0.0), sum_sq(blocks, 0.0), bias(blocks, 0.0);
  std::vector<std::uint64_t> capped(blocks, 0);
  parallel_blocks(blocks, [&](std::size_t b) {
    const std::uint64_t r0 = b * kRepsPerBlock;
    const std::uint64_t r1 = std::min<std::uint64_t>(reps, r0 + kRepsPerBlock);
    double s = 0.0, s2 = 0.0, bb = 0.0;
    for (std::uint64_t r = r0; r < r1; ++r) {
      const auto ps = sample_first_passage(
          n, cap, stream_key({seed, static_cast<std::uint64_t>(Purpose::Walk), r}));
      double w;
      if (ps.capped) {
        // tau_n > cap, so the weight lies in [0, M(cap^gamma)].
        w = 0.5 * m_cap;
        bb += 0.5 * m_cap;
        ++capped[b];
      } else {
        const auto [lo, hi] = cache.bracket(static_cast<std::int64_t>(ps.time));
        w = 0.5 * (lo + hi);
        bb += 0.5 * (hi - lo);
      }
      s += w;
      s2 += w * w;
    }
    sum[b] = s;
    sum_sq[b] = s2;
    bias[b] = bb;
  });
  const double R = static_cast<double>(reps);
  const double mean = pairwise_sum(sum) / R;
  const double second = pairwise_sum(sum_sq) / R;
  const double var = std::max(0.0, second - mean * mean) * (reps > 1 ? R / (R - 1.0) : 1.0);
  est.value = mean;
  est.sample_variance = var;
  est.err = std::sqrt(var / R) + pairwise_sum(bias) / R;
  for (auto c : capped) est.capped += c;
  return est;
}

DisplacementTails displacement_tails(const EdgeLaw& edge, double gamma, std::int64_t n_max,
                                     std::uint64_t reps, std::uint64_t seed,
                                     const McOptions& options) {
  require_gamma(gamma);
  if (n_max < 1 || reps < 1) throw std::domain_error("displacement_tails needs n_max, reps >= 1");
  const std::size_t blocks = static_cast<std::size_t>((reps + kRepsPerBlock - 1) / kRepsPerBlock);
  const auto levels = static_cast<std::size_t>(n_max);
  std::vector<std::vector<std::uint64_t>> right(blocks, std::vector<std::uint64_t>(levels, 0));
  std::vector<std::vector<std::uint64_t>> star(blocks, std::vector<std::uint64_t>(levels, 0));
  std::vector<std::uint64_t> censored(blocks, 0);
  WalkOptions wopt;
  wopt.lifetime_cap = options.lifetime_cap;
  wopt.stop_both = n_max;
  parallel_blocks(blocks, [&](std::size_t b) {
    const std::uint64_t r0 = b * kRepsPerBlock;
    const std::uint64_t r1 = std::min<std::uint64_t>(reps, r0 + kRepsPerBlock);
    for (std::uint64_t r = r0; r < r1; ++r) {
      CounterRng rng(seed, {static_cast<std::uint64_t>(Purpose::Edge), r});
      double uc = 0.0;
      const double u = rng.uniform_with_complement(uc);
      const double h = sample_edge_complement(edge, u, uc);
      const double lu = rng.uniform();
      const auto d = simulate_displacement(gamma, h, lu,
                                           stream_key({seed, static_cast<std::uint64_t>(Purpose::Walk), r}),
                                           wopt);
      if (d.lifetime_censored && d.star < n_max) ++censored[b];
      for (std::size_t l = 0; l < levels; ++l) {
        const auto level = static_cast<std::int64_t>(l + 1);
        if (d.right >= level) ++right[b][l];
        if (d.star >= level) ++star[b][l];
      }
    }
  });
  DisplacementTails out;
  out.reps = reps;
  out.right.assign(levels, 0.0);
  out.star.assign(levels, 0.0);
  for (std::size_t l = 0; l < levels; ++l) {
    std::uint64_t r = 0, s = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      r += right[b][l];
      s += star[b][l];
    }
    out.right[l] = static_cast<double>(r) / static_cast<double>(reps);
    out.star[l] = static_cast<double>(s) / static_cast<double>(reps);
  }
  for (auto c : censored) out.censored += c;
  return out;
}

double ratio_normalization(std::int64_t n, double beta, const SlowlyVarying& L, double gamma) {
  const double nd = static_cast<double>(n);
  return std::pow(nd, -2.0 * beta * gamma) * L(std::pow(nd, 2.0 * gamma));
}

std::vector<RatioPoint> ratio_curve(const std::vector<std::int64_t>& n_list, const EdgeLaw& edge,
                                    double gamma, TailMethod method, double tolerance,
                                    std::uint64_t reps, std::uint64_t seed) {
  const auto beta = edge.beta_exponent();
  const auto L = edge.L_spec();
  if (!beta || !L || edge.regime() != EdgeRegime::Regular) {
    throw std::invalid_argument("ratio_curve needs an edge law with declared beta and L");
  }
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw std::domain_error("ratio_curve needs n >= 1");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw std::invalid_argument("n_list must increase strictly");
  }
  std::vector<double> norm(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) norm[i] = ratio_normalization(n_list[i], *beta, *L, gamma);

  std::vector<TailEstimate> tails;
  if (method == TailMethod::ExactQuadrature) {
    if (!(tolerance > 0.0)) throw std::domain_error("ratio tolerance must be > 0");
    std::vector<double> eps(n_list.size());
    for (std::size_t i = 0; i < n_list.size(); ++i) eps[i] = tolerance * norm[i];
    tails = tail_exact_many(n_list, edge, gamma, eps);
  } else {
    for (auto n : n_list) {
      tails.push_back(method == TailMethod::DirectMC ? tail_mc(n, edge, gamma, reps, seed)
                                                     : tail_rb(n, edge, gamma, reps, seed));
    }
  }
  std::vector<RatioPoint> out;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    RatioPoint pt;
    pt.n = n_list[i];
    pt.normalization = norm[i];
    pt.ratio = tails[i].value / norm[i];
    pt.err = tails[i].err / norm[i];
    pt.tail = tails[i];
    out.push_back(pt);
  }
  return out;
}

}  // namespace frogwb
