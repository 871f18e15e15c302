#pragma once

#include <cstdint>

namespace reldev::bounds {

// Capacity input for the deviation bounds. Shatter/growth kinds carry the
// value itself; dimension kinds are converted to a growth value through the
// Sauer bound at the sample size the bound needs (2m), inside log_value().
enum class CapacityKind { expected_shatter, growth_function, vc_dimension, pseudo_dimension };

struct Capacity {
  CapacityKind kind = CapacityKind::expected_shatter;
  double value = 1.0;

  static Capacity expected_shatter(double v);
  static Capacity growth(double v);
  static Capacity vc(std::int64_t d);
  static Capacity pseudo(std::int64_t d);

  // Natural log of the (bounding) growth value at sample size n.
  double log_value(std::int64_t n) const;
};

// log of the Sauer bound (e n / d)^d. Requires 1 <= d <= n.
double sauer_log_growth(std::int64_t d, std::int64_t n);
double sauer_growth_upper(std::int64_t d, std::int64_t n);

// Which deviation is on top; the bound value is the same for both directions,
// the parameter only keeps call sites explicit about what they verify.
enum class Side { true_minus_emp, emp_minus_true };

// Probability bound clipped to [0, 1]. log_raw keeps the unclipped magnitude;
// vacuous marks values that reached 1 and thus exclude nothing.
struct ProbabilityBound {
  double value = 1.0;
  double log_raw = 0.0;
  bool vacuous = true;
};

// Tail probability of the relative deviation (R - R_hat) / (R + tau)^(1/alpha)
// exceeding epsilon (or the mirror statistic, per side):
//   4 * cap(2m) * exp(-m^(2(alpha-1)/alpha) * eps^2 / 2^((alpha+2)/alpha))
ProbabilityBound relative_deviation_rhs(double alpha, double epsilon, std::int64_t m,
                                        const Capacity& cap, Side side = Side::true_minus_emp);

// The probability above without its leading factor 4; bounds the symmetrized
// two-sample comparison directly (union bound over realized patterns plus the
// sign-flip tail bound).
ProbabilityBound symmetrized_rhs(double alpha, double epsilon, std::int64_t m,
                                 const Capacity& cap);

// Deviation radius at confidence delta: the epsilon for which the bound above
// equals delta. Inverse of relative_deviation_rhs in epsilon.
double relative_deviation_radius(double alpha, std::int64_t m, const Capacity& cap,
                                 double delta, Side side = Side::true_minus_emp);

// Upper bound on the true error solved from the alpha = 2 radius:
//   rate + 2 sqrt(rate * u) + 4u,  u = (log cap(2m) + log(4/delta)) / m
double solved_bound(double rate, std::int64_t m, const Capacity& cap, double delta,
                    Side side = Side::true_minus_emp);

// Tail probability for the interpolated statistic with mixing weight nu:
//   4 * cap(2m) * exp(-m nu eps^2 / (2 (1 - eps^2))),  0 < eps < 1
ProbabilityBound interpolated_rhs(double nu, double epsilon, std::int64_t m,
                                  const Capacity& cap);

// Tail probability of sup_h R - (1 + v) R_hat > epsilon:
//   4 * cap(2m) * exp(-m v eps / (4 (1 + v)))
ProbabilityBound linear_excess_rhs(double v, double epsilon, std::int64_t m,
                                   const Capacity& cap);

// Tail probability that some hypothesis with zero empirical error has true
// error above epsilon: 4 * cap(2m) * exp(-m eps / 4)
ProbabilityBound consistent_excess_rhs(double epsilon, std::int64_t m, const Capacity& cap);

// Tail probability for the square-root relative deviation of the level-set
// class: 4 * cap(2m) * exp(-m eps^2 / 4)
ProbabilityBound moment_scaled_rhs(double epsilon, std::int64_t m, const Capacity& cap);

// Threshold factor reducing unbounded-loss deviations (1 < alpha <= 2) to the
// binary case; the reduced threshold is gamma_factor * epsilon.
double gamma_factor(double alpha, double epsilon, double tau);
// Validity region of that reduction: 0 < tau^((alpha-1)/alpha) < eps^(alpha/(alpha-1)) <= 1.
bool gamma_precondition(double alpha, double epsilon, double tau);

// gamma_factor at alpha = 2, epsilon = 1: sqrt(1+tau)/2 + sqrt(1 + sqrt(tau)/4).
double kappa_factor(double tau);

// Scaling constant between the sqrt-survival integral and the alpha-moment
// root, finite for alpha > 2: (1/2)^(2/alpha) * (alpha/(alpha-2))^((alpha-1)/alpha)
double psi_factor(double alpha);

// Threshold factor for the alpha > 2 reduction: psi_factor + (alpha/(alpha-1)) tau^((alpha-2)/(2 alpha))
double lambda_factor(double alpha, double tau);
// Validity region of that reduction: 0 < tau <= eps^2, eps <= 1.
bool lambda_precondition(double epsilon, double tau);

// Expected-deviation bound for second-moment-bounded losses at confidence
// delta: (3 sqrt(moment2) / 4) * (4 (log cap(2m) + log(1/delta)) / m)^(3/8)
double unbounded_bound_alpha2(double moment2, const Capacity& cap, std::int64_t m,
                              double delta);
// Variant replacing the constant 3/4 with kappa_factor(tau).
double unbounded_bound_alpha2_kappa(double moment2, double tau, const Capacity& cap,
                                    std::int64_t m, double delta);

// Deviation bound for alpha > 2 with pseudo-dimension d:
//   2 psi_factor(alpha) moment^(1/alpha) sqrt((d log(2 e m / d) + log(4/delta)) / m)
double unbounded_bound_large_alpha(double moment_alpha, double alpha, std::int64_t d,
                                   std::int64_t m, double delta);

}  // namespace reldev::bounds
