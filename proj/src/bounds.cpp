#include "reldev/bounds.hpp"

#include <cmath>

#include "reldev/errors.hpp"

namespace reldev::bounds {

namespace {

void check_alpha_up_to_two(double alpha) {
  if (!(alpha > 1.0 && alpha <= 2.0)) throw DomainError("alpha must lie in (1, 2]");
}

void check_sample_size(std::int64_t m) {
  if (m < 1) throw DomainError("m must be at least 1");
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie strictly between 0 and 1");
}

void check_epsilon_positive(double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
}

void check_tau(double tau) {
  if (!(tau >= 0.0)) throw DomainError("tau must be nonnegative");
}

ProbabilityBound from_log(double log_raw) {
  ProbabilityBound b;
  b.log_raw = log_raw;
  b.vacuous = log_raw >= 0.0;
  b.value = b.vacuous ? 1.0 : std::exp(log_raw);
  return b;
}

// m^(2(alpha-1)/alpha) / 2^((alpha+2)/alpha); multiplies eps^2 in the exponent.
double exponent_scale(double alpha, std::int64_t m) {
  return std::pow(static_cast<double>(m), 2.0 * (alpha - 1.0) / alpha) /
         std::pow(2.0, (alpha + 2.0) / alpha);
}

}  // namespace

Capacity Capacity::expected_shatter(double v) {
  if (!(v >= 1.0)) throw DomainError("capacity: expected shatter value must be at least 1");
  return {CapacityKind::expected_shatter, v};
}

Capacity Capacity::growth(double v) {
  if (!(v >= 1.0)) throw DomainError("capacity: growth value must be at least 1");
  return {CapacityKind::growth_function, v};
}

Capacity Capacity::vc(std::int64_t d) {
  if (d < 1) throw DomainError("capacity: VC dimension must be a positive integer");
  return {CapacityKind::vc_dimension, static_cast<double>(d)};
}

Capacity Capacity::pseudo(std::int64_t d) {
  if (d < 1) throw DomainError("capacity: pseudo-dimension must be a positive integer");
  return {CapacityKind::pseudo_dimension, static_cast<double>(d)};
}

double Capacity::log_value(std::int64_t n) const {
  switch (kind) {
    case CapacityKind::expected_shatter:
    case CapacityKind::growth_function:
      return std::log(value);
    case CapacityKind::vc_dimension:
    case CapacityKind::pseudo_dimension:
      return sauer_log_growth(static_cast<std::int64_t>(value), n);
  }
  throw DomainError("capacity: unknown kind");
}

double sauer_log_growth(std::int64_t d, std::int64_t n) {
  if (d < 1) throw DomainError("sauer: dimension must be a positive integer");
  if (d > n) throw DomainError("sauer: dimension must not exceed the sample size");
  const double dd = static_cast<double>(d);
  return dd * (1.0 + std::log(static_cast<double>(n)) - std::log(dd));
}

double sauer_growth_upper(std::int64_t d, std::int64_t n) {
  return std::exp(sauer_log_growth(d, n));
}

ProbabilityBound relative_deviation_rhs(double alpha, double epsilon, std::int64_t m,
                                        const Capacity& cap, Side) {
  check_alpha_up_to_two(alpha);
  check_epsilon_positive(epsilon);
  check_sample_size(m);
  const double log_raw = std::log(4.0) + cap.log_value(2 * m) -
                         exponent_scale(alpha, m) * epsilon * epsilon;
  return from_log(log_raw);
}

ProbabilityBound symmetrized_rhs(double alpha, double epsilon, std::int64_t m,
                                 const Capacity& cap) {
  check_alpha_up_to_two(alpha);
  check_epsilon_positive(epsilon);
  check_sample_size(m);
  const double log_raw = cap.log_value(2 * m) - exponent_scale(alpha, m) * epsilon * epsilon;
  return from_log(log_raw);
}

double relative_deviation_radius(double alpha, std::int64_t m, const Capacity& cap,
                                 double delta, Side) {
  check_alpha_up_to_two(alpha);
  check_sample_size(m);
  check_delta(delta);
  const double numerator = cap.log_value(2 * m) + std::log(4.0 / delta);
  return std::pow(2.0, (alpha + 2.0) / (2.0 * alpha)) *
         std::sqrt(numerator / std::pow(static_cast<double>(m), 2.0 * (alpha - 1.0) / alpha));
}

double solved_bound(double rate, std::int64_t m, const Capacity& cap, double delta, Side) {
  if (!(rate >= 0.0)) throw DomainError("solved_bound: rate must be nonnegative");
  check_sample_size(m);
  check_delta(delta);
  const double u = (cap.log_value(2 * m) + std::log(4.0 / delta)) / static_cast<double>(m);
  return rate + 2.0 * std::sqrt(rate * u) + 4.0 * u;
}

ProbabilityBound interpolated_rhs(double nu, double epsilon, std::int64_t m,
                                  const Capacity& cap) {
  if (!(nu > 0.0)) throw DomainError("interpolated_rhs: nu must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("interpolated_rhs: epsilon must lie strictly between 0 and 1");
  }
  check_sample_size(m);
  const double e2 = epsilon * epsilon;
  const double log_raw = std::log(4.0) + cap.log_value(2 * m) -
                         static_cast<double>(m) * nu * e2 / (2.0 * (1.0 - e2));
  return from_log(log_raw);
}

ProbabilityBound linear_excess_rhs(double v, double epsilon, std::int64_t m,
                                   const Capacity& cap) {
  if (!(v > 0.0)) throw DomainError("linear_excess_rhs: v must be positive");
  check_epsilon_positive(epsilon);
  check_sample_size(m);
  const double log_raw = std::log(4.0) + cap.log_value(2 * m) -
                         static_cast<double>(m) * v * epsilon / (4.0 * (1.0 + v));
  return from_log(log_raw);
}

ProbabilityBound consistent_excess_rhs(double epsilon, std::int64_t m, const Capacity& cap) {
  check_epsilon_positive(epsilon);
  check_sample_size(m);
  const double log_raw =
      std::log(4.0) + cap.log_value(2 * m) - static_cast<double>(m) * epsilon / 4.0;
  return from_log(log_raw);
}

ProbabilityBound moment_scaled_rhs(double epsilon, std::int64_t m, const Capacity& cap) {
  check_epsilon_positive(epsilon);
  check_sample_size(m);
  const double log_raw = std::log(4.0) + cap.log_value(2 * m) -
                         static_cast<double>(m) * epsilon * epsilon / 4.0;
  return from_log(log_raw);
}

double gamma_factor(double alpha, double epsilon, double tau) {
  check_alpha_up_to_two(alpha);
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw DomainError("gamma_factor: epsilon must lie in (0, 1]");
  }
  check_tau(tau);
  const double ratio = alpha / (alpha - 1.0);
  const double c = std::pow(ratio, alpha - 1.0);
  const double lead = (alpha - 1.0) / alpha * std::pow(1.0 + tau, 1.0 / alpha);
  const double mid =
      c / alpha *
      std::pow(1.0 + std::pow((alpha - 1.0) / alpha, alpha) * std::pow(tau, 1.0 / alpha),
               1.0 / alpha);
  const double trail = std::pow(1.0 + std::log(1.0 / epsilon) / c, (alpha - 1.0) / alpha);
  return lead + mid * trail;
}

bool gamma_precondition(double alpha, double epsilon, double tau) {
  check_alpha_up_to_two(alpha);
  return tau > 0.0 && epsilon > 0.0 && epsilon <= 1.0 &&
         std::pow(tau, (alpha - 1.0) / alpha) < std::pow(epsilon, alpha / (alpha - 1.0));
}

double kappa_factor(double tau) {
  check_tau(tau);
  return 0.5 * std::sqrt(1.0 + tau) + std::sqrt(1.0 + 0.25 * std::sqrt(tau));
}

double psi_factor(double alpha) {
  if (!(alpha > 2.0)) throw DomainError("psi_factor: alpha must exceed 2");
  return std::pow(0.5, 2.0 / alpha) * std::pow(alpha / (alpha - 2.0), (alpha - 1.0) / alpha);
}

double lambda_factor(double alpha, double tau) {
  check_tau(tau);
  return psi_factor(alpha) +
         alpha / (alpha - 1.0) * std::pow(tau, (alpha - 2.0) / (2.0 * alpha));
}

bool lambda_precondition(double epsilon, double tau) {
  return tau > 0.0 && epsilon > 0.0 && epsilon <= 1.0 && tau <= epsilon * epsilon;
}

double unbounded_bound_alpha2(double moment2, const Capacity& cap, std::int64_t m,
                              double delta) {
  if (!(moment2 >= 0.0)) throw DomainError("unbounded_bound_alpha2: moment must be nonnegative");
  check_sample_size(m);
  check_delta(delta);
  const double inner = 4.0 * (cap.log_value(2 * m) + std::log(1.0 / delta)) /
                       static_cast<double>(m);
  return 0.75 * std::sqrt(moment2) * std::pow(inner, 0.375);
}

double unbounded_bound_alpha2_kappa(double moment2, double tau, const Capacity& cap,
                                    std::int64_t m, double delta) {
  if (!(moment2 >= 0.0)) throw DomainError("unbounded_bound_alpha2: moment must be nonnegative");
  check_sample_size(m);
  check_delta(delta);
  const double inner = 4.0 * (cap.log_value(2 * m) + std::log(1.0 / delta)) /
                       static_cast<double>(m);
  return kappa_factor(tau) * std::sqrt(moment2) * std::pow(inner, 0.375);
}

double unbounded_bound_large_alpha(double moment_alpha, double alpha, std::int64_t d,
                                   std::int64_t m, double delta) {
  if (!(moment_alpha >= 0.0)) {
    throw DomainError("unbounded_bound_large_alpha: moment must be nonnegative");
  }
  check_sample_size(m);
  check_delta(delta);
  const double psi = psi_factor(alpha);  // also validates alpha > 2
  const double numerator = sauer_log_growth(d, 2 * m) + std::log(4.0 / delta);
  return 2.0 * psi * std::pow(moment_alpha, 1.0 / alpha) *
         std::sqrt(numerator / static_cast<double>(m));
}

}  // namespace reldev::bounds
