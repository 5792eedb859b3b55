#include "frogwb/distributions.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <type_traits>

#include "frogwb/quadrature.hpp"
#include "frogwb/special.hpp"

namespace frogwb {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_open_unit(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error(std::string(what) + " must lie in (0,1)");
}

// Tabulated helpers: piecewise-linear density on the grid.
double tab_density(const EdgeLaw::Tabulated& t, double v) {
  if (v < t.u.front() || v > t.u.back()) return 0.0;
  auto it = std::upper_bound(t.u.begin(), t.u.end(), v);
  std::size_t i = static_cast<std::size_t>(it - t.u.begin());
  if (i == 0) i = 1;
  if (i >= t.u.size()) i = t.u.size() - 1;
  const double w = t.u[i] - t.u[i - 1];
  const double x = (v - t.u[i - 1]) / w;
  return t.density[i - 1] * (1.0 - x) + t.density[i] * x;
}

double tab_cdf(const EdgeLaw::Tabulated& t, double v) {
  if (v <= t.u.front()) return 0.0;
  if (v >= t.u.back()) return 1.0;
  auto it = std::upper_bound(t.u.begin(), t.u.end(), v);
  const std::size_t i = static_cast<std::size_t>(it - t.u.begin()) - 1;
  const double dx = v - t.u[i];
  const double slope = (t.density[i + 1] - t.density[i]) / (t.u[i + 1] - t.u[i]);
  return t.cumulative[i] + t.density[i] * dx + 0.5 * slope * dx * dx;
}

double tab_quantile(const EdgeLaw::Tabulated& t, double u) {
  if (u <= 0.0) return t.u.front();
  if (u >= 1.0) return t.u.back();
  auto it = std::upper_bound(t.cumulative.begin(), t.cumulative.end(), u);
  std::size_t i = static_cast<std::size_t>(it - t.cumulative.begin());
  i = std::clamp<std::size_t>(i, 1, t.u.size() - 1) - 1;
  // Skip zero-mass segments.
  while (i + 1 < t.u.size() - 1 && t.cumulative[i + 1] <= u) ++i;
  const double r = u - t.cumulative[i];
  const double d0 = t.density[i];
  const double slope = (t.density[i + 1] - t.density[i]) / (t.u[i + 1] - t.u[i]);
  const double disc = std::max(0.0, d0 * d0 + 2.0 * slope * r);
  const double denom = d0 + std::sqrt(disc);
  const double dx = denom > 0.0 ? 2.0 * r / denom : 0.0;
  return std::clamp(t.u[i] + dx, t.u[i], t.u[i + 1]);
}

// Monotone bisection for w in (lo, hi) with g(w) = target, g increasing.
double bisect_log(const std::function<double(double)>& g, double target, double lo, double hi) {
  double a = std::log(lo), b = std::log(hi);
  for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
    const double m = 0.5 * (a + b);
    if (g(std::exp(m)) < target) a = m; else b = m;
  }
  return std::exp(0.5 * (a + b));
}

}  // namespace

LifetimeLaw::LifetimeLaw(double g) : gamma(g) {
  if (!(g > 0.0) || !std::isfinite(g)) throw std::domain_error("lifetime shape gamma must be > 0");
}

double dw_survival(const LifetimeLaw& law, double p, std::uint64_t k) {
  require_open_unit(p, "survival parameter p");
  if (k == 0) return 1.0;
  return std::exp(std::pow(static_cast<double>(k), law.gamma) * std::log(p));
}

LifetimeSample sample_lifetime_log(double gamma, double log_p, double u, std::uint64_t cap) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("uniform variate must lie in (0,1)");
  if (!(log_p < 0.0)) throw std::domain_error("log p must be negative");
  const double ratio = std::log(u) / log_p;
  const double x = std::pow(ratio, 1.0 / gamma);
  const double c = static_cast<double>(cap);
  if (!(x < c)) return {cap, true};
  return {static_cast<std::uint64_t>(std::floor(x)), false};
}

LifetimeSample sample_lifetime(const LifetimeLaw& law, double p, double u, std::uint64_t cap) {
  require_open_unit(p, "survival parameter p");
  return sample_lifetime_log(law.gamma, std::log(p), u, cap);
}

EdgeLaw EdgeLaw::beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("Beta edge law needs a, b > 0");
  }
  return EdgeLaw(BetaFamily{a, b});
}

EdgeLaw EdgeLaw::log_corrected(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::domain_error("log-corrected law needs delta > 0");
  return EdgeLaw(LogCorrected{delta});
}

EdgeLaw EdgeLaw::truncated(const EdgeLaw& base, double cap) {
  require_open_unit(cap, "truncation cap");
  const double mass = base.cdf(cap);
  if (!(mass > 0.0)) throw std::domain_error("base law has no mass below the cap");
  return EdgeLaw(TruncatedSupport{std::make_shared<const EdgeLaw>(base), cap, mass});
}

EdgeLaw EdgeLaw::tabulated(std::vector<double> u, std::vector<double> density,
                           std::optional<double> beta, std::optional<SlowlyVarying> L) {
  if (u.size() < 2 || u.size() != density.size()) {
    throw std::invalid_argument("tabulated density needs >= 2 matching (u, density) points");
  }
  if (u.front() < 0.0 || u.back() > 1.0) throw std::domain_error("tabulated grid must lie in [0,1]");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(density[i] >= 0.0) || !std::isfinite(density[i])) {
      throw std::domain_error("tabulated density must be finite and nonnegative");
    }
    if (i > 0 && !(u[i] > u[i - 1])) throw std::invalid_argument("tabulated grid must increase");
  }
  if (beta && !(*beta > 0.0)) throw std::domain_error("declared beta must be positive");
  std::vector<double> cum(u.size(), 0.0);
  for (std::size_t i = 1; i < u.size(); ++i) {
    cum[i] = cum[i - 1] + 0.5 * (density[i] + density[i - 1]) * (u[i] - u[i - 1]);
  }
  if (std::fabs(cum.back() - 1.0) > 1e-8) {
    throw std::domain_error("tabulated density integrates to " + std::to_string(cum.back()) +
                            ", not 1");
  }
  return EdgeLaw(Tabulated{std::move(u), std::move(density), std::move(cum), beta, L});
}

double EdgeLaw::density(double v) const {
  if (!(v > 0.0 && v < 1.0)) return 0.0;
  return std::visit(
      Overloaded{
          [v](const BetaFamily& f) {
            return std::exp((f.a - 1.0) * std::log(v) + (f.b - 1.0) * std::log1p(-v) -
                            log_beta(f.a, f.b));
          },
          [v](const LogCorrected& f) {
            return f.delta / (1.0 - v) * std::pow(1.0 - std::log1p(-v), -(1.0 + f.delta));
          },
          [v](const TruncatedSupport& f) {
            return v <= f.cap ? f.base->density(v) / f.base_mass : 0.0;
          },
          [v](const Tabulated& f) { return tab_density(f, v); },
      },
      family_);
}

double EdgeLaw::cdf(double v) const {
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return 1.0;
  return std::visit(
      Overloaded{
          [v](const BetaFamily& f) { return boost::math::ibeta(f.a, f.b, v); },
          [v](const LogCorrected& f) { return 1.0 - std::pow(1.0 - std::log1p(-v), -f.delta); },
          [v](const TruncatedSupport& f) {
            return v >= f.cap ? 1.0 : f.base->cdf(v) / f.base_mass;
          },
          [v](const Tabulated& f) { return tab_cdf(f, v); },
      },
      family_);
}

double EdgeLaw::quantile(double u) const {
  require_open_unit(u, "uniform variate");
  return std::visit(
      Overloaded{
          [u](const BetaFamily& f) {
            if (f.a == 1.0) return -std::expm1(std::log1p(-u) / f.b);
            if (f.b == 1.0) return std::pow(u, 1.0 / f.a);
            return boost::math::ibeta_inv(f.a, f.b, u);
          },
          [u](const LogCorrected& f) {
            return -std::expm1(1.0 - std::pow(1.0 - u, -1.0 / f.delta));
          },
          [u](const TruncatedSupport& f) { return f.base->quantile(u * f.base_mass); },
          [u](const Tabulated& f) { return tab_quantile(f, u); },
      },
      family_);
}

double EdgeLaw::quantile_complement(double u, double uc) const {
  return std::visit(
      Overloaded{
          [&](const BetaFamily& f) {
            if (f.a == 1.0) return std::pow(uc, 1.0 / f.b);
            if (f.b == 1.0) return -std::expm1(std::log(u) / f.a);
            return boost::math::ibeta_inv(f.b, f.a, uc);
          },
          [&](const LogCorrected& f) { return std::exp(1.0 - std::pow(uc, -1.0 / f.delta)); },
          [&](const TruncatedSupport& f) { return 1.0 - f.base->quantile(u * f.base_mass); },
          [&](const Tabulated& f) { return 1.0 - tab_quantile(f, u); },
      },
      family_);
}

EdgeRegime EdgeLaw::regime() const {
  return std::visit(
      Overloaded{
          [](const BetaFamily&) { return EdgeRegime::Regular; },
          [](const LogCorrected&) { return EdgeRegime::LogCorrected; },
          [](const TruncatedSupport&) { return EdgeRegime::NoEdge; },
          [](const Tabulated& f) {
            return f.u.back() < 1.0 ? EdgeRegime::NoEdge : EdgeRegime::Regular;
          },
      },
      family_);
}

std::optional<double> EdgeLaw::beta_exponent() const {
  return std::visit(
      Overloaded{
          [](const BetaFamily& f) -> std::optional<double> { return f.b; },
          [](const LogCorrected&) -> std::optional<double> { return 0.0; },
          [](const TruncatedSupport&) -> std::optional<double> { return std::nullopt; },
          [](const Tabulated& f) -> std::optional<double> { return f.beta; },
      },
      family_);
}

std::optional<SlowlyVarying> EdgeLaw::L_spec() const {
  return std::visit(
      Overloaded{
          [](const BetaFamily& f) -> std::optional<SlowlyVarying> {
            return SlowlyVarying::constant(std::exp(-log_beta(f.a, f.b)));
          },
          [](const LogCorrected& f) -> std::optional<SlowlyVarying> {
            return SlowlyVarying::log_power(f.delta);
          },
          [](const TruncatedSupport&) -> std::optional<SlowlyVarying> { return std::nullopt; },
          [](const Tabulated& f) -> std::optional<SlowlyVarying> { return f.L; },
      },
      family_);
}

double EdgeLaw::support_max() const {
  return std::visit(
      Overloaded{
          [](const TruncatedSupport& f) { return f.cap; },
          [](const Tabulated& f) { return f.u.back(); },
          [](const auto&) { return 1.0; },
      },
      family_);
}

double fractional_moment(const EdgeLaw& edge, double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw std::domain_error("moment order s must be >= 0");
  if (s == 0.0) return 1.0;
  if (const auto* b = std::get_if<EdgeLaw::BetaFamily>(&edge.family())) {
    // B(a+s,b)/B(a,b) = Gamma(a+s)Gamma(a+b) / (Gamma(a)Gamma(a+b+s))
    const double lm = log_beta_moment(b->a, b->b, s);
    return std::exp(lm);
  }
  // M(s) = int_0^1 Q(1-w)^s dw with h(w) = 1 - Q(1-w) increasing in w.
  auto h = [&edge](double w) { return edge.quantile_complement(1.0 - w, w); };
  auto integrand = [&](double w) {
    if (w <= 0.0) return 1.0;
    if (w >= 1.0) return 0.0;
    const double hw = h(w);
    if (hw >= 1.0) return 0.0;
    return std::exp(s * std::log1p(-hw));
  };
  std::vector<double> cuts{0.0, 1.0};
  if (edge.support_max() >= 1.0) {
    // Boundary layer where s * h(w) ~ 1.
    auto g = [&](double w) { return s * h(w); };
    const double lo = 1e-300;
    for (double target : {1e-3, 1e-1, 1.0, 10.0, 1e2, 1e3}) {
      if (g(lo) < target && g(1.0 - 1e-16) > target) cuts.push_back(bisect_log(g, target, lo, 1.0));
    }
  }
  if (const auto* t = std::get_if<EdgeLaw::Tabulated>(&edge.family())) {
    for (double c : t->cumulative) cuts.push_back(1.0 - c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    const auto r = integrate(integrand, cuts[i], cuts[i + 1], 1e-12);
    total += r.value;
    err += r.abs_error;
  }
  if (!(err <= 1e-10)) {
    throw QuadratureError("fractional moment quadrature missed 1e-10: achieved " +
                              std::to_string(err),
                          {total, err});
  }
  return std::clamp(total, 0.0, 1.0);
}

MomentQuadrature fractional_moment_quadrature(const EdgeLaw& edge, double s) {
  if (!(s >= 0.0)) throw std::domain_error("moment order s must be >= 0");
  const auto* f = std::get_if<EdgeLaw::BetaFamily>(&edge.family());
  if (f == nullptr) {
    return {fractional_moment(edge, s), 1e-10};
  }
  const double a = f->a, b = f->b, lb = log_beta(a, b);
  const double as = a + s;
  // Left half v in (0, 1/2], v = z^(1/(a+s)): v^(a+s-1) dv = dz / (a+s).
  auto left = [&](double z) {
    const double v = std::pow(z, 1.0 / as);
    return std::exp((b - 1.0) * std::log1p(-v) - lb) / as;
  };
  // Right half x = 1 - v in (0, 1/2], x = w^(1/b): x^(b-1) dx = dw / b.
  auto right = [&](double w) {
    const double x = std::pow(w, 1.0 / b);
    return std::exp((as - 1.0) * std::log1p(-x) - lb) / b;
  };
  const double zmax = std::pow(0.5, as);
  const double wmax = std::pow(0.5, b);
  auto r1 = integrate(left, 0.0, zmax, 1e-13);
  // The right integrand concentrates near w = 0 for large s.
  std::vector<double> cuts{0.0};
  for (double t : {1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
    const double w = std::pow(t / std::max(as, 1.0), b);
    if (w < wmax) cuts.push_back(w);
  }
  cuts.push_back(wmax);
  std::sort(cuts.begin(), cuts.end());
  double v2 = 0.0, e2 = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const auto r = integrate(right, cuts[i], cuts[i + 1], 1e-13);
    v2 += r.value;
    e2 += r.abs_error;
  }
  return {r1.value + v2, r1.abs_error + e2};
}

double sample_edge(const EdgeLaw& edge, double u) { return edge.quantile(u); }

double sample_edge_complement(const EdgeLaw& edge, double u, double uc) {
  require_open_unit(u, "uniform variate");
  return edge.quantile_complement(u, uc);
}

double sample_stable_subordinator(double gamma, double u, double e) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::domain_error("stable index must lie in (0,1)");
  require_open_unit(u, "uniform variate");
  if (!(e > 0.0)) throw std::domain_error("exponential variate must be positive");
  const double x = std::numbers::pi * u;
  const double a = std::sin(gamma * x) / std::pow(std::sin(x), 1.0 / gamma);
  const double b = std::pow(std::sin((1.0 - gamma) * x) / e, (1.0 - gamma) / gamma);
  return a * b;
}

EtaLaw EtaLaw::deterministic(std::uint32_t k) { return EtaLaw(Deterministic{k}); }

EtaLaw EtaLaw::poisson(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::domain_error("Poisson needs lambda > 0");
  return EtaLaw(Poisson{lambda});
}

EtaLaw EtaLaw::geometric(double q) {
  require_open_unit(q, "geometric q");
  return EtaLaw(Geometric{q});
}

double EtaLaw::mean() const {
  return std::visit(Overloaded{
                        [](const Deterministic& f) { return static_cast<double>(f.k); },
                        [](const Poisson& f) { return f.lambda; },
                        [](const Geometric& f) { return f.q / (1.0 - f.q); },
                    },
                    family_);
}

double EtaLaw::prob_zero() const {
  return std::visit(Overloaded{
                        [](const Deterministic& f) { return f.k == 0 ? 1.0 : 0.0; },
                        [](const Poisson& f) { return std::exp(-f.lambda); },
                        [](const Geometric& f) { return 1.0 - f.q; },
                    },
                    family_);
}

std::uint32_t EtaLaw::sample(double u) const {
  return std::visit(Overloaded{
                        [](const Deterministic& f) { return f.k; },
                        [u](const Poisson& f) {
                          double pk = std::exp(-f.lambda), cum = pk;
                          std::uint32_t k = 0;
                          while (u > cum && k < 100000) {
                            ++k;
                            pk *= f.lambda / k;
                            cum += pk;
                            if (pk == 0.0) break;
                          }
                          return k;
                        },
                        [u](const Geometric& f) {
                          return static_cast<std::uint32_t>(std::floor(std::log(u) / std::log(f.q)));
                        },
                    },
                    family_);
}

}  // namespace frogwb
