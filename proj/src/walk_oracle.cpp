#include "frogwb/walk_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "frogwb/distributions.hpp"
#include "frogwb/special.hpp"
#include "frogwb/walk_kernel.hpp"

namespace frogwb {

namespace {

unsigned __int128 binom_exact(std::int64_t k, std::int64_t j) {
  if (j < 0 || j > k) return 0;
  j = std::min(j, k - j);
  unsigned __int128 c = 1;
  for (std::int64_t i = 1; i <= j; ++i) c = c * static_cast<unsigned __int128>(k - j + i) / i;
  return c;
}

constexpr std::int64_t kExactLimit = 62;

}  // namespace

FirstPassageTable::FirstPassageTable(std::int64_t n, std::int64_t K, std::vector<double> probs,
                                     double tail_mass)
    : n_(n), K_(K), probs_(std::move(probs)), tail_mass_(tail_mass) {}

double FirstPassageTable::prob(std::int64_t k) const {
  if (k < n_ || k > K_ || ((k - n_) & 1)) return 0.0;
  return probs_[static_cast<std::size_t>((k - n_) / 2)];
}

double FirstPassageTable::total_mass() const {
  double s = 0.0;
  for (double p : probs_) s += p;
  return s + tail_mass_;
}

void FirstPassageTable::write_csv(std::ostream& os) const {
  os << "k,prob\n";
  os.precision(17);
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    os << n_ + 2 * static_cast<std::int64_t>(i) << ',' << probs_[i] << '\n';
  }
}

double first_passage_prob(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::domain_error("target level must be >= 0");
  if (n == 0) return k == 0 ? 1.0 : 0.0;
  if (k < n || ((k - n) & 1)) return 0.0;
  const std::int64_t j = (k + n) / 2;
  if (k <= kExactLimit) {
    // The ballot count n C(k, j) / k is an integer.
    const unsigned __int128 paths =
        static_cast<unsigned __int128>(n) * binom_exact(k, j) / static_cast<unsigned __int128>(k);
    return std::ldexp(static_cast<double>(paths), static_cast<int>(-k));
  }
  return static_cast<double>(n) / static_cast<double>(k) * binomial_half_pmf(j, k);
}

double first_passage_survival(std::int64_t n, std::int64_t k) {
  if (n <= 0) return 0.0;
  if (k < n) return 1.0;
  // Positions with the parity of k in [-n, n-1], clipped to [-k, k].
  std::int64_t lo = std::max(-n, -k), hi = std::min(n - 1, k);
  if (((lo + k) & 1) != 0) ++lo;
  double s = 0.0;
  for (std::int64_t x = lo; x <= hi; x += 2) s += binomial_half_pmf((k + x) / 2, k);
  return std::min(1.0, s);
}

FirstPassageTable first_passage_pmf(std::int64_t n, std::int64_t K) {
  if (n < 1) throw std::domain_error("first_passage_pmf needs n >= 1");
  if (K < n) throw std::domain_error("first_passage_pmf needs K >= n");
  std::vector<double> probs;
  probs.reserve(static_cast<std::size_t>((K - n) / 2 + 1));
  for (std::int64_t k = n; k <= K; k += 2) probs.push_back(first_passage_prob(n, k));
  return FirstPassageTable(n, K, std::move(probs), first_passage_survival(n, K));
}

std::int64_t truncation_for_tail(std::int64_t n, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("tail target must be positive");
  auto fix_parity = [n](std::int64_t k) { return ((k - n) & 1) ? k + 1 : k; };
  // P(tau_n > K) ~ n sqrt(2 / (pi K)).
  const double guess = 2.0 * static_cast<double>(n) * static_cast<double>(n) /
                       (std::numbers::pi * eps * eps);
  std::int64_t hi = fix_parity(std::max<std::int64_t>(n, static_cast<std::int64_t>(std::min(guess, 4e18))));
  while (first_passage_survival(n, hi) > eps) hi = fix_parity(hi + hi / 4 + 2);
  std::int64_t lo = n;
  if (first_passage_survival(n, lo) <= eps) return lo;
  while (hi - lo > 2) {
    const std::int64_t mid = fix_parity(lo + (hi - lo) / 2);
    if (mid >= hi || mid <= lo) break;
    if (first_passage_survival(n, mid) <= eps) hi = mid; else lo = mid;
  }
  return hi;
}

FirstPassageStream::FirstPassageStream(std::int64_t n, std::int64_t k_start) : n_(n), k_(k_start) {
  if (k_ < n_) k_ = n_;
  if ((k_ - n_) & 1) ++k_;
  value_ = first_passage_prob(n_, k_);
}

void FirstPassageStream::advance() {
  if (++since_refresh_ >= 64 || k_ < kExactLimit) {
    k_ += 2;
    value_ = first_passage_prob(n_, k_);
    since_refresh_ = 0;
    return;
  }
  const double k = static_cast<double>(k_);
  const double j = static_cast<double>((k_ + n_) / 2);
  value_ *= k * (k + 1.0) / (4.0 * (j + 1.0) * (k - j + 1.0));
  k_ += 2;
}

double tau1_survival(std::int64_t t) {
  if (t < 1) throw std::domain_error("tau1_survival needs t >= 1");
  return first_passage_survival(1, t);
}

double gen_func(double s) {
  if (!(s > 0.0 && s <= 1.0)) throw std::domain_error("gen_func needs s in (0,1]");
  return s / (1.0 + std::sqrt((1.0 - s) * (1.0 + s)));
}

Displacement simulate_displacement(double gamma, double one_minus_p, double lifetime_u,
                                   std::uint64_t walk_key, const WalkOptions& options) {
  Displacement d;
  const double log_p = std::log1p(-one_minus_p);
  LifetimeSample life = log_p < 0.0 ? sample_lifetime_log(gamma, log_p, lifetime_u, options.lifetime_cap)
                                    : LifetimeSample{options.lifetime_cap, true};
  d.lifetime = life.steps;
  d.lifetime_censored = life.censored;

  detail::StepSource src(walk_key);
  std::int64_t pos = 0, hi = 0, lo = 0;
  std::uint64_t remaining = life.steps;
  auto stop = [&] {
    if (options.stop_right > 0 && hi >= options.stop_right) return true;
    if (options.stop_both > 0 && hi >= options.stop_both && -lo >= options.stop_both) return true;
    return false;
  };
  while (remaining >= 8 && !stop()) {
    const auto& e = detail::kByteSteps[src.next_byte()];
    hi = std::max<std::int64_t>(hi, pos + e.max_prefix);
    lo = std::min<std::int64_t>(lo, pos + e.min_prefix);
    pos += e.total;
    remaining -= 8;
  }
  while (remaining > 0 && !stop()) {
    pos += src.next_step();
    hi = std::max(hi, pos);
    lo = std::min(lo, pos);
    --remaining;
  }
  d.truncated = remaining > 0;
  d.right = hi;
  d.left = -lo;
  d.star = std::max(d.right, d.left);
  return d;
}

Displacement simulate_displacement(double gamma, double p, CounterRng& rng,
                                   const WalkOptions& options) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("survival parameter p must lie in (0,1)");
  const double u = rng.uniform();
  const std::uint64_t walk_key = rng();
  return simulate_displacement(gamma, 1.0 - p, u, walk_key, options);
}

PassageSample sample_first_passage(std::int64_t n, std::uint64_t cap, std::uint64_t walk_key) {
  PassageSample out;
  if (n <= 0) return out;
  detail::StepSource src(walk_key);
  std::int64_t pos = 0;
  std::uint64_t t = 0;
  while (t + 8 <= cap) {
    const std::uint8_t b = src.next_byte();
    const auto& e = detail::kByteSteps[b];
    if (pos + e.max_prefix >= n) {
      for (int j = 0; j < 8; ++j) {
        pos += ((b >> j) & 1) ? 1 : -1;
        if (pos >= n) {
          out.time = t + static_cast<std::uint64_t>(j) + 1;
          return out;
        }
      }
    }
    pos += e.total;
    t += 8;
  }
  while (t < cap) {
    pos += src.next_step();
    ++t;
    if (pos >= n) {
      out.time = t;
      return out;
    }
  }
  out.time = cap;
  out.capped = true;
  out.position_at_cap = pos;
  return out;
}

}  // namespace frogwb
