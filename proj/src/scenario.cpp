#include "reldev/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "reldev/errors.hpp"

namespace reldev::scenario {

BinaryScenario BinaryScenario::build(std::vector<double> probabilities,
                                     std::vector<std::vector<std::uint8_t>> error_rows) {
  if (probabilities.empty()) {
    throw DomainError("scenario: point_probabilities must be nonempty");
  }
  for (double p : probabilities) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw DomainError("scenario: point probabilities must be strictly positive");
    }
  }
  const double total = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("scenario: point probabilities must sum to 1 (got " +
                      std::to_string(total) + ")");
  }

  BinaryScenario s;
  const auto domain = static_cast<std::int64_t>(probabilities.size());
  s.errors = capacity::HypothesisTable(domain, std::move(error_rows));
  s.point_probabilities = std::move(probabilities);

  s.true_risks.clear();
  s.true_risks.reserve(static_cast<std::size_t>(s.errors.size()));
  for (const auto& row : s.errors.rows()) {
    double risk = 0.0;
    for (std::int64_t i = 0; i < domain; ++i) {
      if (row[static_cast<std::size_t>(i)]) risk += s.point_probabilities[static_cast<std::size_t>(i)];
    }
    s.true_risks.push_back(risk);
  }

  s.cumulative.assign(s.point_probabilities.size(), 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.point_probabilities.size(); ++i) {
    acc += s.point_probabilities[i];
    s.cumulative[i] = acc;
  }
  s.cumulative.back() = 1.0;  // guard the last bucket against rounding

  std::vector<std::int64_t> all_points(static_cast<std::size_t>(domain));
  std::iota(all_points.begin(), all_points.end(), std::int64_t{0});
  s.pattern_count = static_cast<double>(capacity::shatter_count(s.errors, all_points));
  return s;
}

std::int64_t BinaryScenario::sample_point(rng::SplitMix64& gen) const {
  const double u = gen.uniform();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  const auto idx = std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                            static_cast<std::ptrdiff_t>(cumulative.size()) - 1);
  return static_cast<std::int64_t>(idx);
}

void ParetoScenario::validate() const {
  if (!(base.shape > 0.0) || !(base.scale > 0.0) || !std::isfinite(base.shape) ||
      !std::isfinite(base.scale)) {
    throw DomainError("scenario: pareto shape and scale must be positive finite");
  }
  if (hypothesis_scales.empty()) {
    throw DomainError("scenario: hypothesis_scales must be nonempty");
  }
  for (double c : hypothesis_scales) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw DomainError("scenario: hypothesis scale factors must be strictly positive");
    }
  }
}

double ParetoScenario::true_mean(std::int64_t h) const {
  return hypothesis_scales.at(static_cast<std::size_t>(h)) * base.mean();
}

double ParetoScenario::true_moment(std::int64_t h, double order) const {
  const double c = hypothesis_scales.at(static_cast<std::size_t>(h));
  return std::pow(c, order) * base.moment(order);
}

double ParetoScenario::draw(rng::SplitMix64& gen) const {
  // Inverse CDF: F(z) = 1 - (scale/z)^shape, so z = scale * (1-u)^(-1/shape).
  const double u = gen.uniform();
  return base.scale * std::pow(1.0 - u, -1.0 / base.shape);
}

std::int64_t hypothesis_count(const Scenario& model) {
  return std::visit([](const auto& s) { return s.hypothesis_count(); }, model);
}

BinaryScenario threshold_binary_scenario() {
  constexpr std::int64_t kPoints = 16;
  constexpr std::int64_t kLabelCut = 8;  // label(i) = 1 iff i >= 8
  std::vector<double> probs(kPoints, 1.0 / static_cast<double>(kPoints));
  std::vector<std::vector<std::uint8_t>> rows;
  rows.reserve(kPoints);
  for (std::int64_t cut = 1; cut <= kPoints; ++cut) {
    // Rule predicts 1 iff i >= cut; it disagrees with the label exactly on
    // the interval between cut and the label cut.
    std::vector<std::uint8_t> row(kPoints, 0);
    const std::int64_t lo = std::min(cut, kLabelCut);
    const std::int64_t hi = std::max(cut, kLabelCut);
    for (std::int64_t i = lo; i < hi; ++i) row[static_cast<std::size_t>(i)] = 1;
    rows.push_back(std::move(row));
  }
  return BinaryScenario::build(std::move(probs), std::move(rows));
}

BinaryScenario single_hypothesis_half_scenario() {
  return BinaryScenario::build({0.5, 0.5}, {{1, 0}});
}

ParetoScenario pareto_scale_scenario() {
  ParetoScenario s;
  s.base = analytic::Pareto{2.5, 1.0};
  s.hypothesis_scales = {0.25, 0.5, 1.0, 2.0, 4.0};
  s.validate();
  return s;
}

ParetoScenario importance_weighting_scenario() {
  ParetoScenario s;
  s.base = analytic::Pareto{2.2, 1.0};
  s.hypothesis_scales = {0.5, 1.0, 1.5};
  s.validate();
  return s;
}

}  // namespace reldev::scenario
