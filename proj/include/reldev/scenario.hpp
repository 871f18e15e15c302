#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "reldev/analytic.hpp"
#include "reldev/capacity.hpp"
#include "reldev/rng.hpp"

namespace reldev::scenario {

// Finite-support binary loss model: a short list of support points with fixed
// probabilities plus a 0/1 error indicator per (hypothesis, point). True
// risks are exact weighted sums, so Monte Carlo frequencies can be compared
// against closed-form targets without a second layer of estimation noise.
struct BinaryScenario {
  std::vector<double> point_probabilities{1.0};
  capacity::HypothesisTable errors{1, {{0}}};
  std::vector<double> true_risks{0.0};  // one per surviving row of `errors`
  std::vector<double> cumulative{1.0};  // inclusive prefix sums for sampling
  double pattern_count = 1.0;           // distinct error patterns on the support

  // Validates probabilities (strictly positive, sum 1 within 1e-12), builds
  // the deduplicated error table, and precomputes risks and the pattern count.
  static BinaryScenario build(std::vector<double> probabilities,
                              std::vector<std::vector<std::uint8_t>> error_rows);

  std::int64_t point_count() const { return errors.domain_size(); }
  std::int64_t hypothesis_count() const { return errors.size(); }
  std::int64_t sample_point(rng::SplitMix64& gen) const;
};

// Heavy-tailed scale family: one Pareto base variable Z and per-hypothesis
// loss c_h * Z. Means and alpha-moments are closed-form here too.
struct ParetoScenario {
  analytic::Pareto base{2.5, 1.0};
  std::vector<double> hypothesis_scales{1.0};

  void validate() const;
  std::int64_t hypothesis_count() const {
    return static_cast<std::int64_t>(hypothesis_scales.size());
  }
  double true_mean(std::int64_t h) const;
  double true_moment(std::int64_t h, double order) const;
  double draw(rng::SplitMix64& gen) const;  // inverse-CDF sample of Z
};

using Scenario = std::variant<BinaryScenario, ParetoScenario>;

std::int64_t hypothesis_count(const Scenario& model);

// Canned models used by the verification suite and the CLI demos.

// 16 equiprobable points, the 16 one-sided threshold rules over them, labels
// matching the middle threshold. Risks are |k - 8| / 16; one rule is exactly
// consistent and the hardest rule has risk 1/2. Pattern count on the support
// is 16.
BinaryScenario threshold_binary_scenario();

// Two equiprobable points and a single rule that errs on the first: risk 1/2.
// Small enough that sampling distributions can be enumerated by hand.
BinaryScenario single_hypothesis_half_scenario();

// Pareto(2.5, 1) base loss with scale factors spanning 0.25x to 4x.
ParetoScenario pareto_scale_scenario();

// Weighted-loss variant: reweighted losses keep a finite second moment but
// only barely (shape 2.2), the regime where mean estimates are fragile and
// relative bounds with alpha < 2 are the useful ones.
ParetoScenario importance_weighting_scenario();

}  // namespace reldev::scenario
