#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "frogwb/slowly_varying.hpp"

namespace frogwb {

/// Discrete Weibull lifetime: P(Xi >= k | pi = p) = p^(k^gamma).
struct LifetimeLaw {
  double gamma = 1.0;

  explicit LifetimeLaw(double g);
};

struct LifetimeSample {
  std::uint64_t steps = 0;
  bool censored = false;  // true when the draw hit the cap
};

double dw_survival(const LifetimeLaw& law, double p, std::uint64_t k);

/// Inverse-transform draw floor((ln u / ln p)^(1/gamma)), clamped to cap.
LifetimeSample sample_lifetime(const LifetimeLaw& law, double p, double u, std::uint64_t cap);

/// Same draw with ln p supplied directly, for p within rounding of 1.
LifetimeSample sample_lifetime_log(double gamma, double log_p, double u, std::uint64_t cap);

enum class EdgeRegime {
  Regular,       // density ~ (1-u)^(beta-1) L(1/(1-u))
  LogCorrected,  // beta = 0 boundary example; survival for every gamma
  NoEdge,        // support bounded away from 1
};

/// Law of the survival parameter pi on (0, 1).
class EdgeLaw {
 public:
  struct BetaFamily {
    double a;
    double b;
  };
  struct LogCorrected {
    double delta;
  };
  struct TruncatedSupport {
    std::shared_ptr<const EdgeLaw> base;
    double cap;
    double base_mass;  // base cdf at cap
  };
  struct Tabulated {
    std::vector<double> u;
    std::vector<double> density;
    std::vector<double> cumulative;
    std::optional<double> beta;
    std::optional<SlowlyVarying> L;
  };
  using Family = std::variant<BetaFamily, LogCorrected, TruncatedSupport, Tabulated>;

  static EdgeLaw beta(double a, double b);
  static EdgeLaw log_corrected(double delta);
  static EdgeLaw truncated(const EdgeLaw& base, double cap);
  /// Piecewise-linear density through (u_i, density_i); must integrate to 1
  /// within 1e-8. The edge exponent and L cannot be read off a table, so the
  /// caller declares them when ratio normalization or classification is needed.
  static EdgeLaw tabulated(std::vector<double> u, std::vector<double> density,
                           std::optional<double> beta = std::nullopt,
                           std::optional<SlowlyVarying> L = std::nullopt);

  const Family& family() const { return family_; }

  double density(double v) const;
  double cdf(double v) const;
  double quantile(double u) const;
  /// 1 - quantile(u), accurate when the quantile is within rounding of 1.
  /// uc must equal 1 - u.
  double quantile_complement(double u, double uc) const;

  EdgeRegime regime() const;
  std::optional<double> beta_exponent() const;
  std::optional<SlowlyVarying> L_spec() const;
  /// Supremum of the support.
  double support_max() const;
  bool is_beta() const { return std::holds_alternative<BetaFamily>(family_); }

 private:
  explicit EdgeLaw(Family f) : family_(std::move(f)) {}
  Family family_;
};

/// M(s) = E[pi^s]. Closed form for Beta; quadrature (|err| <= 1e-10) otherwise.
double fractional_moment(const EdgeLaw& edge, double s);

/// Quadrature route for M(s) that never touches the closed form; used to
/// cross-check Beta laws. Reports the achieved error bound.
struct MomentQuadrature {
  double value;
  double abs_error;
};
MomentQuadrature fractional_moment_quadrature(const EdgeLaw& edge, double s);

double sample_edge(const EdgeLaw& edge, double u);
/// Returns 1 - pi for the inverse-transform draw at u (uc = 1 - u).
double sample_edge_complement(const EdgeLaw& edge, double u, double uc);

/// Positive gamma-stable variate with E[exp(-lambda S)] = exp(-lambda^gamma)
/// (Kanter's representation); u uniform on (0,1), e standard exponential.
double sample_stable_subordinator(double gamma, double u, double e);

/// Law of the initial number of particles per site.
class EtaLaw {
 public:
  struct Deterministic {
    std::uint32_t k;
  };
  struct Poisson {
    double lambda;
  };
  /// P(eta = k) = (1 - q) q^k, k >= 0.
  struct Geometric {
    double q;
  };
  using Family = std::variant<Deterministic, Poisson, Geometric>;

  static EtaLaw deterministic(std::uint32_t k);
  static EtaLaw poisson(double lambda);
  static EtaLaw geometric(double q);

  double mean() const;
  double prob_zero() const;
  std::uint32_t sample(double u) const;
  const Family& family() const { return family_; }

 private:
  explicit EtaLaw(Family f) : family_(f) {}
  Family family_;
};

}  // namespace frogwb
