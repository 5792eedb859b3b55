#include "frogwb/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace frogwb {

namespace {

constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,    -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,  .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3, -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

// Stirling series remainder for x >= 20; truncation error below 1e-16.
double stirling_series(double x) {
  const double x2 = x * x;
  return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * x2)) / x2) / x2) / x;
}

constexpr std::array<double, 16> kStirlingErrorTable = {
    0.0,
    8.10614667953272610701e-02,
    4.13406959554092970355e-02,
    2.76779256849983383570e-02,
    2.07906721037650933648e-02,
    1.66446911898211931391e-02,
    1.38761288230707484359e-02,
    1.18967099458917695276e-02,
    1.04112652619720962022e-02,
    9.25546218271273285483e-03,
    8.33056343336287079271e-03,
    7.57367548795184059029e-03,
    6.94284010720952991791e-03,
    6.40899418800420714315e-03,
    5.95137011275884749567e-03,
    5.55473355196280105250e-03,
};

// Deviance term x log(x/np) + np - x.
double bd0(double x, double np) {
  if (std::fabs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
    return s;
  }
  return x * std::log(x / np) + np - x;
}

}  // namespace

double log_gamma(double x) {
  if (x < 0.5) {
    const double s = std::sin(std::numbers::pi * x);
    return std::log(std::numbers::pi / std::fabs(s)) - log_gamma(1.0 - x);
  }
  x -= 1.0;
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (x + static_cast<double>(i));
  const double t = x + kLanczosG + 0.5;
  return kHalfLog2Pi + (x + 0.5) * std::log(t) - t + std::log(a);
}

double gamma_fn(double x) {
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
  }
  return std::exp(log_gamma(x));
}

double log_gamma_ratio(double x, double d) {
  if (x < 20.0 || x + d < 20.0) return log_gamma(x + d) - log_gamma(x);
  return (x - 0.5) * std::log1p(d / x) + d * std::log(x + d) - d + stirling_series(x + d) -
         stirling_series(x);
}

double log_beta_moment(double a, double b, double s) {
  return log_gamma_ratio(a, b) - log_gamma_ratio(a + s, b);
}

double log_beta(double a, double b) {
  if (a > b) return log_beta(b, a);
  // log B(a,b) = log Gamma(a) - [log Gamma(a+b) - log Gamma(b)]
  return log_gamma(a) - log_gamma_ratio(b, a);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double stirling_error(double n) {
  if (n <= 15.0) {
    const double r = std::nearbyint(n);
    if (r == n && r >= 0.0) return kStirlingErrorTable[static_cast<std::size_t>(r)];
    return log_gamma(n + 1.0) - (n + 0.5) * std::log(n) + n - kHalfLog2Pi;
  }
  const double nn = n * n;
  constexpr double S0 = 1.0 / 12.0, S1 = 1.0 / 360.0, S2 = 1.0 / 1260.0, S3 = 1.0 / 1680.0,
                   S4 = 1.0 / 1188.0;
  if (n > 500) return (S0 - S1 / nn) / n;
  if (n > 80) return (S0 - (S1 - S2 / nn) / nn) / n;
  if (n > 35) return (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n;
  return (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n;
}

double binomial_half_pmf(std::int64_t x, std::int64_t n) {
  if (x < 0 || x > n) return 0.0;
  const double nd = static_cast<double>(n);
  if (x == 0 || x == n) return std::exp(-nd * std::numbers::ln2);
  const double xd = static_cast<double>(x);
  const double yd = nd - xd;
  const double half = 0.5 * nd;
  const double lc = stirling_error(nd) - stirling_error(xd) - stirling_error(yd) - bd0(xd, half) -
                    bd0(yd, half);
  const double lf = std::log(2.0 * std::numbers::pi) + std::log(xd) + std::log1p(-xd / nd);
  return std::exp(lc - 0.5 * lf);
}

}  // namespace frogwb
