#pragma once

#include <cstdint>
#include <vector>

namespace reldev::binomial {

struct BinomialSpec {
  std::int64_t trials = 0;
  double success_prob = 0.0;
};

// Throws DomainError unless trials >= 1 and success_prob lies in [0, 1].
void validate(const BinomialSpec& spec);

double pmf(const BinomialSpec& spec, std::int64_t k);

enum class Tail {
  geq_mean,  // Pr[X >= m p], event includes an integer mean
  leq_mean,  // Pr[X <= m p], likewise inclusive
};

double tail_at_mean(const BinomialSpec& spec, Tail which);

// Certification scan over the (m, p) grid p = k / grid_denominator. For
// geq_mean only p > threshold_numerator / m is admissible; for leq_mean only
// p < 1 - threshold_numerator / m. Admissibility is decided in exact integer
// arithmetic so boundary points (e.g. p = 1/2 at m = 2) are never admitted by
// a rounding accident.
struct ScanOptions {
  std::int64_t max_trials = 200;           // scan m = 2 .. max_trials
  std::int64_t grid_denominator = 1000;    // p resolution 1e-3
  std::int64_t threshold_numerator = 1;    // admit p beyond threshold/m
  bool record_points = true;
  bool parallel = true;
};

struct GridPoint {
  std::int64_t trials;
  double p;
  double tail;
};

struct ScanResult {
  double min_tail = 0.0;
  std::int64_t argmin_trials = 0;
  double argmin_p = 0.0;
  bool all_above_quarter = false;          // strict: every tail > 1/4
  std::vector<std::int64_t> skipped_trials;  // m values with an empty admissible grid
  std::vector<GridPoint> points;           // ordered by (m, grid index)
};

ScanResult scan_tail_minimum(Tail which, const ScanOptions& options = {});

// Plain nested-loop reference for the scan; the parallel kernel must agree
// with it bit for bit.
ScanResult scan_tail_minimum_serial(Tail which, const ScanOptions& options = {});

}  // namespace reldev::binomial
