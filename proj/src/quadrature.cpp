#include "frogwb/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>
#include <numbers>

namespace frogwb {

QuadratureResult integrate(const Integrand& f, double lo, double hi, double abs_tol) {
  QuadratureResult r;
  if (hi <= lo) return r;
  // Global adaptive scheme: split the panel with the largest error estimate
  // until the summed estimate meets abs_tol.
  struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
  };
  auto rule = [&f](double a, double b) {
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &err);
    return Panel{a, b, v, err};
  };
  constexpr int kMaxPanels = 20000;
  std::priority_queue<Panel> heap;
  heap.push(rule(lo, hi));
  double total_err = heap.top().error;
  int panels = 1;
  while (total_err > abs_tol && panels < kMaxPanels) {
    const Panel p = heap.top();
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) break;
    heap.pop();
    const Panel l = rule(p.a, mid), h = rule(mid, p.b);
    total_err += l.error + h.error - p.error;
    heap.push(l);
    heap.push(h);
    ++panels;
  }
  std::vector<Panel> all;
  all.reserve(heap.size());
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  r.value = 0.0;
  r.abs_error = 0.0;
  for (const auto& p : all) {
    r.value += p.value;
    r.abs_error += p.error;
  }
  return r;
}

double integrate_or_throw(const Integrand& f, double lo, double hi, double abs_tol) {
  const auto r = integrate(f, lo, hi, abs_tol);
  if (!(r.abs_error <= abs_tol) || !std::isfinite(r.value)) {
    throw QuadratureError("quadrature did not reach tolerance: achieved " +
                              std::to_string(r.abs_error),
                          r);
  }
  return r.value;
}

QuadratureResult integrate_to_infinity(const Integrand& f, double lo, double abs_tol) {
  QuadratureResult r;
  boost::math::quadrature::exp_sinh<double> integrator;
  double l1 = 0.0;
  r.value = integrator.integrate([&](double x) { return f(x); }, lo,
                                 std::numeric_limits<double>::infinity(),
                                 std::max(abs_tol, 1e-15) * 1e-3, &r.abs_error, &l1);
  return r;
}

GoldenSectionResult golden_section_max(const std::function<double(double)>& f, double lo,
                                       double hi, double x_tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > x_tol * std::max(1.0, std::fabs(a) + std::fabs(b))) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  GoldenSectionResult out;
  out.argmax = 0.5 * (a + b);
  out.value = f(out.argmax);
  const double span = hi - lo;
  out.hit_boundary = (out.argmax - lo) < 1e-6 * span || (hi - out.argmax) < 1e-6 * span;
  return out;
}

}  // namespace frogwb
