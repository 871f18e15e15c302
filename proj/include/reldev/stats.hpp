#pragma once

#include <cstdint>

namespace reldev::stats {

// Inverse of the standard normal CDF. Rational initial guess refined with one
// Halley step against erfc, accurate to ~1e-15 over (0, 1).
double normal_quantile(double p);

// One-sided Wilson score interval for a binomial proportion. The z value is
// the (1 + confidence) / 2 normal quantile. upper(0, n) is positive and
// lower(n, n) is below one, so zero observed counts still give usable bands.
double wilson_upper(std::int64_t successes, std::int64_t trials, double confidence);
double wilson_lower(std::int64_t successes, std::int64_t trials, double confidence);

}  // namespace reldev::stats
