#pragma once

#include <string>
#include <variant>

namespace frogwb {

/// Parametric slowly varying functions L on [1, inf).
class SlowlyVarying {
 public:
  struct Constant {
    double c;
  };
  /// L(x) = delta (1 + log x)^-(1 + delta)
  struct LogPower {
    double delta;
  };
  /// L(x) = c (1 + log x)^rho
  struct PowerOfLog {
    double c;
    double rho;
  };
  using Family = std::variant<Constant, LogPower, PowerOfLog>;

  static SlowlyVarying constant(double c);
  static SlowlyVarying log_power(double delta);
  static SlowlyVarying power_of_log(double c, double rho);

  double operator()(double x) const;

  /// limsup / liminf of L(n^{2 gamma}) as n -> inf. These do not depend on
  /// gamma for the supported families; may be +inf.
  double limsup_at_infinity() const;
  double liminf_at_infinity() const;

  /// L multiplied by a positive constant.
  SlowlyVarying scaled(double factor) const;

  const Family& family() const { return family_; }
  std::string describe() const;

 private:
  explicit SlowlyVarying(Family f) : family_(f) {}
  Family family_;
};

}  // namespace frogwb
