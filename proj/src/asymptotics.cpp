#include "frogwb/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "frogwb/quadrature.hpp"
#include "frogwb/special.hpp"

namespace frogwb {

namespace {

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error(std::string(what) + " must be positive and finite");
}

bool wear_out(double gamma, Branch branch) {
  if (branch == Branch::Auto) return gamma >= 1.0;
  return branch == Branch::WearOut;
}

// Gamma(2 beta gamma) Gamma(beta) / (gamma Gamma(beta gamma)) in log space.
double burn_in_log_core(double gamma, double beta) {
  return log_gamma(2.0 * beta * gamma) + log_gamma(beta) - std::log(gamma) - log_gamma(beta * gamma);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

double beta_c(double gamma) {
  require_positive(gamma, "gamma");
  return 1.0 / (2.0 * gamma);
}

double theta(double c0) {
  require_positive(c0, "c0");
  return 0.5 * normal_cdf(-1.0 / std::sqrt(c0));
}

double K_up(double gamma, double beta, Branch branch) {
  require_positive(gamma, "gamma");
  require_positive(beta, "beta");
  if (wear_out(gamma, branch)) {
    if (!(gamma > 0.5)) throw std::domain_error("wear-out K_up needs gamma > 1/2");
    const double g = log_gamma(1.0 - 1.0 / (2.0 * gamma)) - 0.5 * std::log(std::numbers::pi);
    return std::exp(std::log(2.0 * gamma) + log_gamma(2.0 * beta * gamma) +
                    beta * (1.0 - gamma) * std::numbers::ln2 - 2.0 * gamma * beta * g);
  }
  return std::exp(std::log(2.0 * gamma) + burn_in_log_core(gamma, beta) - beta * gamma * std::numbers::ln2);
}

double K_down(double gamma, double beta, std::optional<double> c0, Branch branch) {
  require_positive(gamma, "gamma");
  require_positive(beta, "beta");
  if (wear_out(gamma, branch)) {
    if (!c0) throw std::invalid_argument("K_down on the wear-out branch needs c0");
    require_positive(*c0, "c0");
    return theta(*c0) * gamma_fn(beta) * std::pow(*c0, -gamma * beta);
  }
  return std::exp(std::log(2.0 * gamma) + burn_in_log_core(gamma, beta) -
                  beta * (1.0 + gamma) * std::numbers::ln2);
}

double K_down_quadrature(double gamma, double beta, double c0) {
  require_positive(gamma, "gamma");
  require_positive(beta, "beta");
  require_positive(c0, "c0");
  // w = y^(2 gamma beta) removes the endpoint singularity at 0.
  const double a = std::pow(c0, gamma);
  const auto r = integrate_to_infinity([&](double w) { return std::exp(-a * std::pow(w, 1.0 / beta)); }, 0.0,
                                       1e-14);
  return 2.0 * gamma * theta(c0) * r.value / (2.0 * gamma * beta);
}

KDownSup K_down_sup(double gamma, double beta) {
  const double lo = std::log(1e-4), hi = std::log(1e4);
  auto f = [&](double x) { return K_down(gamma, beta, std::exp(x), Branch::WearOut); };
  const auto r = golden_section_max(f, lo, hi, 1e-10);
  KDownSup out;
  out.c0_star = std::exp(r.argmax);
  out.value = r.value;
  out.boundary_hit = r.hit_boundary;
  return out;
}

double K_lower(double gamma, double beta) {
  if (gamma >= 1.0) return K_down_sup(gamma, beta).value;
  return K_down(gamma, beta);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ExtinctAS: return "ExtinctAS";
    case Verdict::SurvivesWP: return "SurvivesWP";
    case Verdict::BoundaryInconclusive: return "BoundaryInconclusive";
    case Verdict::OutsideHypotheses: return "OutsideHypotheses";
  }
  return "?";
}

EtaSummary summarize(const EtaLaw& eta) { return {eta.mean(), eta.prob_zero()}; }

PhaseVerdict classify_phase(double gamma, double beta, const SlowlyVarying& L, const EtaSummary& eta) {
  PhaseVerdict out;
  if (!(gamma > 0.0) || !std::isfinite(gamma) || !(beta > 0.0) || !std::isfinite(beta)) {
    out.reason = "gamma and beta must be positive and finite";
    return out;
  }
  const double bc = beta_c(gamma);
  out.beta_c = bc;
  const bool finite_mean = std::isfinite(eta.mean);
  const double inv_mean = finite_mean ? 1.0 / eta.mean : 0.0;
  const bool occupied = eta.prob_zero < 1.0;

  if (std::abs(beta - bc) > 1e-12 * bc) {
    if (beta > bc) {
      if (!finite_mean) {
        out.reason = "beta > beta_c but E(eta) is infinite";
        return out;
      }
      out.verdict = Verdict::ExtinctAS;
      out.reason = "beta = " + fmt(beta) + " > beta_c = " + fmt(bc);
      return out;
    }
    if (!occupied) {
      out.reason = "beta < beta_c but P(eta = 0) = 1";
      return out;
    }
    out.verdict = Verdict::SurvivesWP;
    out.reason = "beta = " + fmt(beta) + " < beta_c = " + fmt(bc);
    return out;
  }

  // Boundary: compare the envelope constants with 1 / E(eta).
  out.K_up = K_up(gamma, beta);
  out.K_down = K_lower(gamma, beta);
  out.boundary_rhs = inv_mean;
  const double up = 2.0 * *out.K_up * L.limsup_at_infinity();
  const double down = *out.K_down * L.liminf_at_infinity();
  if (finite_mean && up < inv_mean) {
    out.verdict = Verdict::ExtinctAS;
    out.boundary_lhs = up;
    out.reason = "beta = beta_c and 2 K_up limsup L = " + fmt(up) + " < 1/E(eta) = " + fmt(inv_mean);
    return out;
  }
  if (occupied && down > inv_mean) {
    out.verdict = Verdict::SurvivesWP;
    out.boundary_lhs = down;
    out.reason = "beta = beta_c and K_down liminf L = " + fmt(down) + " > 1/E(eta) = " + fmt(inv_mean);
    return out;
  }
  out.verdict = Verdict::BoundaryInconclusive;
  out.boundary_lhs = up;
  out.reason = "beta = beta_c; neither envelope inequality holds (upper " + fmt(up) + ", lower " +
               fmt(down) + ", 1/E(eta) " + fmt(inv_mean) + ")";
  return out;
}

PhaseVerdict classify_phase(double gamma, const EdgeLaw& edge, const EtaSummary& eta) {
  switch (edge.regime()) {
    case EdgeRegime::LogCorrected: {
      PhaseVerdict out;
      out.beta_c = beta_c(gamma);
      if (eta.prob_zero < 1.0) {
        out.verdict = Verdict::SurvivesWP;
        out.reason = "log-corrected edge density survives for every gamma";
      } else {
        out.reason = "log-corrected edge but P(eta = 0) = 1";
      }
      return out;
    }
    case EdgeRegime::NoEdge: {
      PhaseVerdict out;
      out.beta_c = beta_c(gamma);
      if (std::isfinite(eta.mean)) {
        out.verdict = Verdict::ExtinctAS;
        out.reason = "support bounded away from 1 (max " + fmt(edge.support_max()) + ")";
      } else {
        out.reason = "bounded support but E(eta) is infinite";
      }
      return out;
    }
    case EdgeRegime::Regular: break;
  }
  const auto beta = edge.beta_exponent();
  const auto L = edge.L_spec();
  if (!beta || !L) {
    PhaseVerdict out;
    out.beta_c = beta_c(gamma);
    out.reason = "edge law does not declare beta and L";
    return out;
  }
  return classify_phase(gamma, *beta, *L, eta);
}

}  // namespace frogwb
