#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include "frogwb/slowly_varying.hpp"

namespace frogwb {

SlowlyVarying SlowlyVarying::constant(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::domain_error("constant L needs c > 0");
  return SlowlyVarying(Constant{c});
}

SlowlyVarying SlowlyVarying::log_power(double delta) {
  if (!(delta > 0.0)) throw std::domain_error("LogPower needs delta > 0");
  return SlowlyVarying(LogPower{delta});
}

SlowlyVarying SlowlyVarying::power_of_log(double c, double rho) {
  if (!(c > 0.0) || !std::isfinite(rho)) throw std::domain_error("PowerOfLog needs c > 0");
  return SlowlyVarying(PowerOfLog{c, rho});
}

double SlowlyVarying::operator()(double x) const {
  if (x < 1.0) x = 1.0;
  return std::visit(
      [x](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return f.c;
        } else if constexpr (std::is_same_v<T, LogPower>) {
          return f.delta * std::pow(1.0 + std::log(x), -(1.0 + f.delta));
        } else {
          return f.c * std::pow(1.0 + std::log(x), f.rho);
        }
      },
      family_);
}

double SlowlyVarying::limsup_at_infinity() const {
  return std::visit(
      [](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return f.c;
        } else if constexpr (std::is_same_v<T, LogPower>) {
          return 0.0;
        } else {
          if (f.rho < 0.0) return 0.0;
          if (f.rho > 0.0) return std::numeric_limits<double>::infinity();
          return f.c;
        }
      },
      family_);
}

// Every supported family converges (possibly to 0 or inf), so the two limits coincide.
double SlowlyVarying::liminf_at_infinity() const { return limsup_at_infinity(); }

SlowlyVarying SlowlyVarying::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::domain_error("scale factor must be positive");
  return std::visit(
      [factor](const auto& f) -> SlowlyVarying {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return SlowlyVarying::constant(f.c * factor);
        } else if constexpr (std::is_same_v<T, LogPower>) {
          return SlowlyVarying::power_of_log(f.delta * factor, -(1.0 + f.delta));
        } else {
          return SlowlyVarying::power_of_log(f.c * factor, f.rho);
        }
      },
      family_);
}

std::string SlowlyVarying::describe() const {
  std::ostringstream os;
  std::visit(
      [&os](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Constant>) {
          os << "const(" << f.c << ")";
        } else if constexpr (std::is_same_v<T, LogPower>) {
          os << "logpower(" << f.delta << ")";
        } else {
          os << "poweroflog(" << f.c << "," << f.rho << ")";
        }
      },
      family_);
  return os.str();
}

}  // namespace frogwb
