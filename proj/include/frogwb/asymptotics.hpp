#pragma once

#include <optional>
#include <string>

#include "frogwb/distributions.hpp"
#include "frogwb/slowly_varying.hpp"

namespace frogwb {

/// beta_c = 1 / (2 gamma).
double beta_c(double gamma);

/// theta(c0) = (1 - Phi(1 / sqrt(c0))) / 2.
double theta(double c0);

/// Which closed form to use. Auto routes gamma >= 1 to WearOut and gamma < 1
/// to BurnIn.
enum class Branch { Auto, WearOut, BurnIn };

double K_up(double gamma, double beta, Branch branch = Branch::Auto);

/// For the wear-out form c0 is required; the burn-in form ignores it.
double K_down(double gamma, double beta, std::optional<double> c0 = std::nullopt,
              Branch branch = Branch::Auto);

/// 2 gamma theta(c0) int_0^inf y^(2 gamma beta - 1) exp(-c0^gamma y^(2 gamma)) dy
/// by quadrature, for cross-checking the closed form.
double K_down_quadrature(double gamma, double beta, double c0);

struct KDownSup {
  double c0_star = 0.0;
  double value = 0.0;
  bool boundary_hit = false;
};

/// Maximizes K_down(gamma, beta, c0) over log c0 in [log 1e-4, log 1e4].
KDownSup K_down_sup(double gamma, double beta);

/// Lower band constant used by the sandwich checks: K_down_sup for the
/// wear-out branch, K_down otherwise.
double K_lower(double gamma, double beta);

enum class Verdict { ExtinctAS, SurvivesWP, BoundaryInconclusive, OutsideHypotheses };
std::string to_string(Verdict v);

struct PhaseVerdict {
  Verdict verdict = Verdict::OutsideHypotheses;
  std::string reason;
  std::optional<double> beta_c;
  std::optional<double> K_up;
  std::optional<double> K_down;  // sup over c0 on the wear-out branch
  std::optional<double> boundary_lhs;
  std::optional<double> boundary_rhs;
};

/// What the classifier needs from eta. mean may be +inf.
struct EtaSummary {
  double mean = 1.0;
  double prob_zero = 0.0;
};
EtaSummary summarize(const EtaLaw& eta);

PhaseVerdict classify_phase(double gamma, double beta, const SlowlyVarying& L, const EtaSummary& eta);

/// Dispatches on the edge family: LogCorrected forces survival, bounded
/// support forces extinction, Beta and declared Tabulated laws use (beta, L).
PhaseVerdict classify_phase(double gamma, const EdgeLaw& edge, const EtaSummary& eta);

}  // namespace frogwb
