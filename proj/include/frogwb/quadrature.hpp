#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace frogwb {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
};

/// Raised when an integral misses its tolerance; carries the achieved bound.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  QuadratureResult achieved() const { return achieved_; }

 private:
  QuadratureResult achieved_;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (31 points) on a finite interval.
QuadratureResult integrate(const Integrand& f, double lo, double hi, double abs_tol = 1e-12);

/// Same as integrate(), but throws QuadratureError when the estimate exceeds abs_tol.
double integrate_or_throw(const Integrand& f, double lo, double hi, double abs_tol);

/// Integral over [lo, inf).
QuadratureResult integrate_to_infinity(const Integrand& f, double lo, double abs_tol = 1e-12);

struct GoldenSectionResult {
  double argmax = 0.0;
  double value = 0.0;
  bool hit_boundary = false;
};

/// Maximizes a unimodal function on [lo, hi].
GoldenSectionResult golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                       double x_tol = 1e-12);

}  // namespace frogwb
