#include "frogwb/verify.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "frogwb/asymptotics.hpp"
#include "frogwb/one_particle.hpp"
#include "frogwb/parallel.hpp"
#include "frogwb/rng.hpp"
#include "frogwb/special.hpp"
#include "frogwb/walk_oracle.hpp"

namespace frogwb {

namespace {

const double kSqrt2OverPi = std::sqrt(2.0 / std::numbers::pi);

std::string num(double x, int prec = 6) {
  std::ostringstream os;
  os.precision(prec);
  os << x;
  return os.str();
}

struct McMean {
  double mean;
  double se;
};

// Mean and standard error of f(S_1) over reps stable draws.
McMean stable_mean(double gamma, std::uint64_t reps, std::uint64_t seed, std::uint64_t tag,
                   const std::function<double(double)>& f) {
  constexpr std::uint64_t kBlock = 1 << 14;
  const std::size_t blocks = static_cast<std::size_t>((reps + kBlock - 1) / kBlock);
  std::vector<double> s1(blocks), s2(blocks);
  parallel_blocks(blocks, [&](std::size_t b) {
    double a = 0.0, q = 0.0;
    const std::uint64_t end = std::min<std::uint64_t>(reps, (b + 1) * kBlock);
    for (std::uint64_t i = b * kBlock; i < end; ++i) {
      CounterRng rng(seed, {static_cast<std::uint64_t>(Purpose::Stable), tag, i});
      const double u = rng.uniform();
      const double e = rng.exponential();
      const double x = f(sample_stable_subordinator(gamma, u, e));
      a += x;
      q += x * x;
    }
    s1[b] = a;
    s2[b] = q;
  });
  const double R = static_cast<double>(reps);
  const double mean = pairwise_sum(s1) / R;
  const double var = std::max(0.0, pairwise_sum(s2) / R - mean * mean) * R / std::max(1.0, R - 1.0);
  return {mean, std::sqrt(var / R)};
}

}  // namespace

CheckResult check_tau1_tail() {
  CheckResult r;
  r.name = "tau1_tail";
  r.target = kSqrt2OverPi;
  r.tolerance = 0.01 * r.target;
  std::ostringstream d;
  double prev = INFINITY;
  bool decreasing = true;
  for (std::int64_t t : {100, 1000, 10000}) {
    const double v = std::sqrt(static_cast<double>(t)) * tau1_survival(t);
    const double e = std::abs(v - r.target);
    decreasing = decreasing && e < prev;
    prev = e;
    r.observed = v;
    d << "t=" << t << ": " << num(v, 8) << "; ";
  }
  r.passed = std::abs(r.observed - r.target) <= r.tolerance && decreasing;
  d << (decreasing ? "error decreasing" : "error not decreasing");
  r.detail = d.str();
  return r;
}

CheckResult check_ballot_enumeration(int n_max, int k_max) {
  CheckResult r;
  r.name = "ballot_enumeration";
  r.target = 0.0;
  r.tolerance = 0.0;
  std::uint64_t mismatches = 0, compared = 0;
  for (int n = 1; n <= n_max; ++n) {
    // ways[x + k_max]: paths of the current length that stay below n and end at x.
    std::vector<std::uint64_t> ways(2 * k_max + 3, 0), next(ways.size(), 0);
    ways[k_max] = 1;
    for (int k = 1; k <= k_max; ++k) {
      std::fill(next.begin(), next.end(), 0);
      std::uint64_t hits = 0;
      for (int x = -k_max; x < n; ++x) {
        const std::uint64_t w = ways[x + k_max];
        if (!w) continue;
        if (x + 1 == n) hits += w; else next[x + 1 + k_max] += w;
        next[x - 1 + k_max] += w;
      }
      ways.swap(next);
      const double dp = std::ldexp(static_cast<double>(hits), -k);
      ++compared;
      if (dp != first_passage_prob(n, k)) ++mismatches;
    }
  }
  const bool spot = first_passage_prob(2, 4) == 0.125;
  r.observed = static_cast<double>(mismatches);
  r.passed = mismatches == 0 && spot;
  r.detail = std::to_string(compared) + " (n, k) pairs compared; P(tau_2 = 4) = " + num(first_passage_prob(2, 4));
  return r;
}

CheckResult check_laplace_limit(double gamma) {
  if (!(gamma > 1.0)) throw std::domain_error("check_laplace_limit needs gamma > 1");
  CheckResult r;
  r.name = "laplace_limit";
  r.target = gamma_fn(1.0 - 1.0 / (2.0 * gamma)) * kSqrt2OverPi;
  r.tolerance = 0.05 * r.target;
  const double as[] = {1e-4, 1e-5, 1e-6};
  double ratio[3];
  std::ostringstream d;
  bool bounded = true;
  double worst_gap = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double a = as[i];
    // Past K the factor 1 - exp(-a k^gamma) is within e^-50 of 1, so the
    // tail P(tau_1 > K) is known to that relative precision.
    std::int64_t K = static_cast<std::int64_t>(std::ceil(std::pow(50.0 / a, 1.0 / gamma)));
    if (K % 2 == 0) ++K;
    std::vector<double> terms;
    for (FirstPassageStream s(1, 1); s.k() <= K; s.advance()) {
      terms.push_back(s.value() * -std::expm1(-a * std::pow(static_cast<double>(s.k()), gamma)));
    }
    const double body = pairwise_sum(terms);
    const double tail = first_passage_survival(1, K);
    const double tail_lo = tail * -std::expm1(-a * std::pow(static_cast<double>(K), gamma));
    const double scale = std::pow(a, 1.0 / (2.0 * gamma));
    ratio[i] = (body + 0.5 * (tail + tail_lo)) / scale;
    worst_gap = std::max(worst_gap, 0.5 * (tail - tail_lo) / scale);
    bounded = bounded && ratio[i] > 0.0 && std::isfinite(ratio[i]);
    d << "a=" << num(a) << ": " << num(ratio[i], 8) << " (K=" << K << "); ";
  }
  // One Richardson step assuming an a^(1/2) correction; a drops by 10 per step.
  const double q = std::sqrt(10.0);
  r.observed = (q * ratio[2] - ratio[1]) / (q - 1.0);
  const bool monotone = (ratio[0] - ratio[1]) * (ratio[1] - ratio[2]) > 0.0;
  d << "extrapolated " << num(r.observed, 8) << "; tail bracket " << num(worst_gap) << "; "
    << (monotone ? "monotone approach" : "non-monotone approach");
  r.passed = bounded && worst_gap <= 0.01 * r.target && std::abs(r.observed - r.target) <= r.tolerance;
  r.detail = d.str();
  return r;
}

CheckResult check_superadditivity(std::uint64_t trials, std::uint64_t seed) {
  CheckResult r;
  r.name = "superadditivity";
  r.target = 0.0;
  r.tolerance = 0.0;
  const double gammas[] = {1.0, 1.5, 2.0, 5.0};
  std::uint64_t violations = 0;
  auto holds = [](const std::vector<double>& x, double g) {
    double sum = 0.0, rhs = 0.0;
    for (double v : x) sum += v;
    for (double v : x) rhs += std::pow(v, g);
    const double lhs = std::pow(sum, g);
    if (g == 1.0) return lhs >= rhs;
    // pow and the sums each round; allow a few ulps per term.
    return lhs >= rhs * (1.0 - 4.0 * DBL_EPSILON * static_cast<double>(x.size() + 1));
  };
  if (!holds({1.0, 1.0}, 2.0) || !holds({0.0, 0.0, 0.0}, 2.0)) ++violations;
  for (std::uint64_t i = 0; i < trials; ++i) {
    CounterRng rng(seed, {static_cast<std::uint64_t>(Purpose::Trial), i});
    const std::size_t len = 2 + static_cast<std::size_t>(rng() % 19);
    const double g = gammas[i % 4];
    std::vector<double> x(len);
    for (auto& v : x) {
      if (rng.uniform() < 0.05) {
        v = 0.0;
      } else {
        v = rng.uniform() * std::pow(10.0, -6.0 + 12.0 * rng.uniform());
      }
    }
    if (!holds(x, g)) ++violations;
  }
  r.observed = static_cast<double>(violations);
  r.passed = violations == 0;
  r.detail = std::to_string(trials) + " random trials plus two fixed cases";
  return r;
}

CheckResult check_berry_esseen_bound(double c0, std::int64_t n) {
  if (n < 50) throw std::domain_error("check_berry_esseen_bound needs n >= 50");
  CheckResult r;
  r.name = "berry_esseen";
  r.target = theta(c0);
  // tau_n < c0 n^2 iff tau_n <= K.
  const std::int64_t K = static_cast<std::int64_t>(std::ceil(c0 * static_cast<double>(n) * static_cast<double>(n))) - 1;
  const auto table = first_passage_pmf(n, std::max(K, n));
  std::vector<double> probs;
  for (std::int64_t k = n; k <= K; k += 2) probs.push_back(table.prob(k));
  r.observed = pairwise_sum(probs);
  r.tolerance = 0.0;
  r.passed = r.observed >= r.target;
  const double reflection = 2.0 * (1.0 - normal_cdf(1.0 / std::sqrt(c0)));
  r.detail = "c0=" + num(c0) + " n=" + std::to_string(n) + ": P=" + num(r.observed, 8) +
             " theta=" + num(r.target, 8) + " reflection estimate " + num(reflection);
  return r;
}

CheckResult check_berry_esseen_grid() {
  CheckResult r;
  r.name = "berry_esseen_grid";
  r.target = 0.0;
  r.tolerance = 0.0;
  r.passed = true;
  double min_slack = INFINITY;
  std::ostringstream d;
  for (double c0 : {0.5, 1.0, 2.0}) {
    for (std::int64_t n : {50, 100, 200}) {
      const auto one = check_berry_esseen_bound(c0, n);
      r.passed = r.passed && one.passed;
      min_slack = std::min(min_slack, one.observed - one.target);
      d << one.detail << "; ";
    }
  }
  r.observed = min_slack;
  d << "min slack " << num(min_slack);
  r.detail = d.str();
  return r;
}

CheckResult check_stable_moments(double gamma, double theta_exp, std::uint64_t reps, std::uint64_t seed) {
  if (reps < 100000) throw std::domain_error("check_stable_moments needs reps >= 1e5");
  CheckResult r;
  r.name = "stable_moments";
  r.target = gamma_fn(theta_exp / gamma) / (gamma * gamma_fn(theta_exp));
  const auto m = stable_mean(gamma, reps, seed, 1, [&](double s) { return std::pow(s, -theta_exp); });
  r.observed = m.mean;
  r.tolerance = std::min(3.0 * m.se, 0.02 * r.target);
  const double dev = std::abs(m.mean - r.target);
  r.passed = dev <= 3.0 * m.se && dev <= 0.02 * r.target;
  r.detail = "gamma=" + num(gamma) + " theta=" + num(theta_exp) + " reps=" + std::to_string(reps) +
             " stderr=" + num(m.se) + " rel dev=" + num(dev / r.target);
  return r;
}

CheckResult check_stable_scaling(double gamma, std::uint64_t reps, std::uint64_t seed) {
  CheckResult r;
  r.name = "stable_scaling";
  r.target = 0.0;
  r.tolerance = 3.0;
  r.passed = true;
  double worst = 0.0;
  std::ostringstream d;
  std::uint64_t tag = 2;
  for (double a : {0.5, 1.0, 2.0}) {
    const double scale = std::pow(a, 1.0 / gamma);
    const auto m = stable_mean(gamma, reps, seed, tag++, [&](double s) { return std::exp(-scale * s); });
    const double z = std::abs(m.mean - std::exp(-a)) / m.se;
    worst = std::max(worst, z);
    d << "a=" << num(a) << ": " << num(m.mean, 7) << " vs " << num(std::exp(-a), 7) << " (z=" << num(z, 3) << "); ";
  }
  r.observed = worst;
  r.passed = worst <= 3.0;
  r.detail = d.str();
  return r;
}

CheckResult check_bernstein_mixture(double gamma, std::uint64_t reps, std::uint64_t seed) {
  CheckResult r;
  r.name = "bernstein_mixture";
  r.target = 0.0;
  r.tolerance = 3.0;
  double worst = 0.0;
  std::ostringstream d;
  std::uint64_t tag = 10;
  for (double t : {1.0, 4.0}) {
    const auto m = stable_mean(gamma, reps, seed, tag++, [&](double s) { return std::exp(-t * s); });
    const double want = std::exp(-std::pow(t, gamma));
    const double z = std::abs(m.mean - want) / m.se;
    worst = std::max(worst, z);
    d << "t=" << num(t) << ": " << num(m.mean, 7) << " vs " << num(want, 7) << " (z=" << num(z, 3) << "); ";
  }
  r.observed = worst;
  r.passed = worst <= 3.0;
  r.detail = d.str();
  return r;
}

namespace {

// log f(e^-u) = -arccosh(e^u), written without cancellation.
double log_f_exp(double u) {
  const double y = std::expm1(u);
  return -std::log1p(y + std::sqrt(y * (y + 2.0)));
}

}  // namespace

CheckResult check_fexp_bounds() {
  CheckResult r;
  r.name = "fexp_bounds";
  r.tolerance = 2.0;
  constexpr int kPoints = 50;
  const double U = 0.1;
  double cmax = 0.0, cmin = INFINITY;
  bool in_range = true;
  for (int i = 0; i < kPoints; ++i) {
    const double u = std::pow(10.0, -6.0 + 5.0 * i / (kPoints - 1));
    const double lf = log_f_exp(u);
    in_range = in_range && lf < 0.0 && std::isfinite(lf);
    const double c = std::abs(lf + std::sqrt(2.0 * u)) / std::pow(u, 1.5);
    cmax = std::max(cmax, c);
    cmin = std::min(cmin, c);
  }
  const double C = cmax;
  bool envelope = true;
  std::ostringstream d;
  for (double eps : {0.05, 0.1, 0.5}) {
    const double ueps = std::min(U, 2.0 * eps * eps / (C * C));
    for (int i = 0; i < kPoints; ++i) {
      const double u = ueps * std::pow(10.0, -4.0 * i / (kPoints - 1));
      const double lf = log_f_exp(u);
      const double s = std::sqrt(2.0 * u);
      envelope = envelope && -(1.0 + eps) * s <= lf && lf <= -(1.0 - eps) * s;
    }
    d << "u_eps(" << num(eps) << ")=" << num(ueps) << "; ";
  }
  r.target = std::sqrt(2.0) / 6.0;
  r.observed = cmax / cmin;
  r.passed = in_range && envelope && r.observed < r.tolerance;
  d << "residual/u^1.5 in [" << num(cmin) << ", " << num(cmax) << "]; envelope " << (envelope ? "holds" : "fails");
  r.detail = d.str();
  return r;
}

CheckResult check_potter_uct(const SlowlyVarying& L) {
  CheckResult r;
  r.name = "potter_uct " + L.describe();
  r.target = 0.0;
  r.tolerance = 0.05;
  constexpr int kGrid = 200;
  double sups[3];
  int idx = 0;
  std::ostringstream d;
  for (double x : {1e3, 1e6, 1e9}) {
    const double Lx = L(x);
    double s = 0.0;
    for (int i = 0; i < kGrid; ++i) {
      const double y = 0.5 * std::pow(4.0, static_cast<double>(i) / (kGrid - 1));
      s = std::max(s, std::abs(L(x * y) / Lx - 1.0));
    }
    sups[idx++] = s;
    d << "x=" << num(x) << ": " << num(s) << "; ";
  }
  const bool decreasing = sups[1] <= sups[0] && sups[2] <= sups[1];
  bool potter = true;
  const double x = 1e9, Lx = L(x);
  for (int i = 0; i < 400; ++i) {
    const double y = std::pow(10.0, -3.0 + 6.0 * i / 399.0);
    potter = potter && L(x * y) / Lx <= 1.1 * std::max(std::pow(y, 0.1), std::pow(y, -0.1));
  }
  r.observed = sups[2];
  r.passed = decreasing && sups[2] < r.tolerance && potter;
  d << (decreasing ? "decreasing" : "not decreasing") << "; Potter (1.1, 0.1) " << (potter ? "holds" : "fails");
  r.detail = d.str();
  return r;
}

CheckResult check_reduction_identity(const std::vector<std::int64_t>& n_list, const EdgeLaw& edge, double gamma,
                                     std::uint64_t reps, std::uint64_t seed) {
  CheckResult r;
  r.name = "reduction_identity";
  r.target = 0.0;
  r.tolerance = 3.0;
  r.passed = true;
  double worst = 0.0;
  std::ostringstream d;
  const double eps = std::min(1e-4, 0.05 / std::sqrt(static_cast<double>(reps)));
  for (auto n : n_list) {
    const auto exact = tail_exact(n, edge, gamma, eps);
    const auto mc = tail_mc(n, edge, gamma, reps, stream_key({seed, static_cast<std::uint64_t>(n)}));
    const double p = exact.value;
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
    const double diff = std::abs(mc.value - p);
    double z = 0.0;
    if (diff > exact.err) z = se > 0.0 ? (diff - exact.err) / se : INFINITY;
    worst = std::max(worst, z);
    r.passed = r.passed && z <= 3.0;
    d << "n=" << n << ": exact " << num(p, 8) << " (err " << num(exact.err, 2) << ") mc " << num(mc.value, 8)
      << " z=" << num(z, 3);
    if (mc.capped) d << " capped " << mc.capped;
    d << "; ";
  }
  r.observed = worst;
  r.detail = d.str();
  return r;
}

CheckResult check_symmetry(const EdgeLaw& edge, double gamma, std::int64_t n_max, std::uint64_t reps,
                           std::uint64_t seed) {
  CheckResult r;
  r.name = "symmetry_bound";
  r.target = 0.0;
  r.tolerance = 3.0;
  const auto tails = displacement_tails(edge, gamma, n_max, reps, seed);
  const double R = static_cast<double>(reps);
  double min_slack = INFINITY;
  r.passed = true;
  std::ostringstream d;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const double a = tails.right[n - 1], s = tails.star[n - 1];
    const double se = std::sqrt(a * (1.0 - a) / R + 0.25 * s * (1.0 - s) / R);
    const double slack = a - 0.5 * s + 3.0 * se;
    min_slack = std::min(min_slack, slack);
    r.passed = r.passed && slack >= 0.0;
    d << "n=" << n << ": " << num(a, 5) << " vs " << num(0.5 * s, 5) << "; ";
  }
  r.observed = min_slack;
  r.detail = d.str();
  return r;
}

CheckResult check_ratio_sandwich(double gamma, double beta, const std::vector<std::int64_t>& n_list,
                                 double ratio_tol, double band_tol) {
  if (n_list.empty()) throw std::invalid_argument("empty n_list");
  CheckResult r;
  r.name = "ratio_sandwich gamma=" + num(gamma) + " beta=" + num(beta);
  const double upper = K_up(gamma, beta);
  const double lower = K_lower(gamma, beta);
  r.target = upper;
  r.tolerance = band_tol;
  const auto pts = ratio_curve(n_list, EdgeLaw::beta(1.0, beta), gamma, TailMethod::ExactQuadrature, ratio_tol, 0, 0);
  const double n_top = static_cast<double>(n_list.back());
  r.passed = true;
  std::ostringstream d;
  d << "band [" << num(lower) << ", " << num(upper) << "] x (1 +- " << num(band_tol) << "); ";
  double last = 0.0;
  for (const auto& p : pts) {
    const bool top = static_cast<double>(p.n) * 10.0 >= n_top;
    if (top) {
      const bool inside = p.ratio - p.err >= lower * (1.0 - band_tol) && p.ratio + p.err <= upper * (1.0 + band_tol);
      r.passed = r.passed && inside;
    }
    last = p.ratio;
    d << "n=" << p.n << ": " << num(p.ratio, 6) << " +- " << num(p.err, 2) << (top ? "" : " (below top decade)") << "; ";
  }
  r.observed = last;
  r.detail = d.str();
  return r;
}

std::vector<std::string> suite_names() {
  return {"tau1", "ballot", "laplace", "superadd", "berry", "stable", "fexp", "potter", "reduction", "symmetry",
          "sandwich"};
}

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed) {
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  auto want = [&](const char* s) { return all || suite == s; };
  const auto names = suite_names();
  if (!all && std::find(names.begin(), names.end(), suite) == names.end()) {
    throw std::invalid_argument("unknown verification suite '" + suite + "'");
  }
  if (want("tau1")) out.push_back(check_tau1_tail());
  if (want("ballot")) out.push_back(check_ballot_enumeration());
  if (want("laplace")) out.push_back(check_laplace_limit(2.0));
  if (want("superadd")) out.push_back(check_superadditivity(100000, seed));
  if (want("berry")) out.push_back(check_berry_esseen_grid());
  if (want("stable")) {
    out.push_back(check_stable_moments(0.5, 0.5, 1000000, seed));
    out.push_back(check_stable_scaling(0.5, 1000000, seed));
    out.push_back(check_bernstein_mixture(0.5, 1000000, seed));
  }
  if (want("fexp")) out.push_back(check_fexp_bounds());
  if (want("potter")) {
    for (const auto& L : {SlowlyVarying::constant(0.5), SlowlyVarying::log_power(0.25),
                          SlowlyVarying::power_of_log(1.0, -1.0)}) {
      out.push_back(check_potter_uct(L));
    }
  }
  if (want("reduction")) {
    out.push_back(check_reduction_identity({0, 1, 2, 5}, EdgeLaw::beta(1.0, 1.0), 1.0, 1000000, seed));
    out.push_back(check_reduction_identity({10}, EdgeLaw::beta(1.0, 0.25), 2.0, 1000000, seed));
  }
  if (want("symmetry")) out.push_back(check_symmetry(EdgeLaw::beta(1.0, 0.5), 1.0, 10, 1000000, seed));
  if (want("sandwich")) out.push_back(check_ratio_sandwich(1.0, 0.5, {200, 400, 600, 800, 1000}, 0.02, 0.05));
  return out;
}

std::vector<CheckResult> run_all(std::uint64_t seed) { return run_suite("all", seed); }

}  // namespace frogwb
