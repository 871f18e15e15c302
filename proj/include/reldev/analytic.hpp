#pragma once

#include <cstdint>
#include <functional>

namespace reldev::analytic {

// Base of the normalizing denominator: the averaged form uses (x+y+eta)/2,
// the plain form x+y+eta.
enum class RatioVariant { half_sum, plain_sum };

// (x - y) / base^(1/alpha). Strictly increasing in x and decreasing in y for
// alpha > 1 and eta > 0; the probe below samples that claim.
double deviation_ratio(double alpha, double eta, double x, double y, RatioVariant variant);

struct ProbeResult {
  std::int64_t samples = 0;
  std::int64_t violations = 0;
  double min_margin = 0.0;  // smallest observed increase that should be positive
};

// Randomized monotonicity check over log-uniform (x, y, delta) triples.
// Deterministic given the seed; the parallel kernel and the serial reference
// agree exactly (per-index streams, order-free merges).
ProbeResult monotonicity_probe(double alpha, double eta, RatioVariant variant,
                               std::int64_t samples, std::uint64_t seed);
ProbeResult monotonicity_probe_serial(double alpha, double eta, RatioVariant variant,
                                      std::int64_t samples, std::uint64_t seed);

struct ApproxCheck {
  double lhs = 0.0;  // eps * sqrt(1 + log(1/eps) / 2)
  double rhs = 0.0;  // eps^beta
  bool holds = false;  // lhs <= rhs
};

// Compares the sqrt-log deviation envelope against the power envelope eps^beta
// on (0, 1]. At beta = 3/4 the comparison holds on all of (0, 1] with equality
// only at eps = 1; slightly larger beta already fails near 1.
ApproxCheck sqrt_log_approx(double epsilon, double beta);

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double scale_hint = 1.0;  // starting truncation point; pass a scale of the tail
  int max_doublings = 60;
  int max_depth = 48;
};

// int_0^infty alpha t^(alpha-1) tail(t) dt for a nonincreasing survival
// function with values in [0, 1]. Truncates at T where the fitted power decay
// leaves a remainder below 1e-10, integrates [0, T] by adaptive Simpson, and
// adds the fitted remainder back. Throws DivergenceError when the tail decays
// too slowly for the moment to exist.
double tail_integral_moment(const std::function<double(double)>& tail, double alpha,
                            const QuadratureOptions& options = {});

// Survival model tail(t) = min(1, (scale/t)^shape) with closed-form moments.
struct Pareto {
  double shape = 2.0;
  double scale = 1.0;

  double tail(double t) const;
  double mean() const;                 // finite for shape > 1
  double moment(double order) const;   // finite for order < shape
  double sqrt_tail_integral() const;   // int_0^infty sqrt(tail), finite for shape > 2
};

}  // namespace reldev::analytic
