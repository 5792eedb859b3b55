#pragma once

#include <cstdint>

namespace frogwb {

/// log|Gamma(x)| by the Lanczos approximation (g = 607/128, 15 terms).
/// Reentrant, unlike std::lgamma which writes the global signgam.
double log_gamma(double x);

double gamma_fn(double x);

/// log Gamma(x + d) - log Gamma(x) without cancellation for large x.
double log_gamma_ratio(double x, double d);

double log_beta(double a, double b);

/// log E[X^s] for X ~ Beta(a, b), i.e. log B(a + s, b) - log B(a, b). Stays
/// accurate for s up to ~1e300.
double log_beta_moment(double a, double b, double s);

/// Standard normal cdf.
double normal_cdf(double x);

/// Stirling remainder log(n!) - (n + 1/2) log n + n - log sqrt(2 pi).
double stirling_error(double n);

/// P(Bin(n, 1/2) = x), saddle-point form (Loader 2000); relative error
/// near machine precision for all n.
double binomial_half_pmf(std::int64_t x, std::int64_t n);

}  // namespace frogwb
