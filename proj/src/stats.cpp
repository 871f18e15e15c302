#include "reldev/stats.hpp"

#include <cmath>

#include "reldev/errors.hpp"

namespace reldev::stats {

namespace {

// Acklam's rational approximation to the normal quantile (~1e-9 by itself).
double quantile_estimate(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = p - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("normal_quantile: p must lie strictly between 0 and 1");
  }
  double x = quantile_estimate(p);
  // Halley refinement: e is the CDF error at x, u the Newton step.
  const double sqrt2pi = 2.5066282746310005024;
  double e = 0.5 * std::erfc(-x / 1.4142135623730950488) - p;
  double u = e * sqrt2pi * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

double wilson_upper(std::int64_t successes, std::int64_t trials, double confidence) {
  if (trials < 1) throw DomainError("wilson_upper: trials must be at least 1");
  if (successes < 0 || successes > trials) {
    throw DomainError("wilson_upper: successes must lie in [0, trials]");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw DomainError("wilson_upper: confidence must lie strictly between 0 and 1");
  }
  const double z = normal_quantile(0.5 * (1.0 + confidence));
  const double n = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = ph + z2 / (2.0 * n);
  const double spread = z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n));
  return (center + spread) / (1.0 + z2 / n);
}

double wilson_lower(std::int64_t successes, std::int64_t trials, double confidence) {
  return 1.0 - wilson_upper(trials - successes, trials, confidence);
}

}  // namespace reldev::stats
