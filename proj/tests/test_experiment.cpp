#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "reldev/errors.hpp"
#include "reldev/experiment.hpp"
#include "reldev/report_io.hpp"
#include "reldev/rng.hpp"
#include "reldev/scenario.hpp"
#include "reldev/stats.hpp"

using reldev::ConfigError;
using reldev::DomainError;
using namespace reldev::experiment;
using namespace reldev::scenario;

namespace {

bool rel_close(double got, double want, double tol) {
  return std::abs(got - want) <= tol * std::max(std::abs(want), 1e-300);
}

ExperimentConfig threshold_config() {
  ExperimentConfig config;
  config.bound_id = "thm3";
  config.statistic = Statistic::one_sided_true_minus_emp;
  config.model = threshold_binary_scenario();
  config.sample_size = 100;
  config.trials = 200;
  config.alpha = 2.0;
  config.tau = 0.01;
  config.epsilon_grid = {0.3, 0.45};
  config.confidence = 0.99;
  config.master_seed = 11;
  config.validate();
  return config;
}

}  // namespace

TEST_CASE("builtin scenarios have the advertised shape") {
  const auto thr = threshold_binary_scenario();
  CHECK(thr.point_count() == 16);
  CHECK(thr.hypothesis_count() == 16);  // the empty error set collapses once
  double sum = 0.0;
  for (double p : thr.point_probabilities) sum += p;
  CHECK(rel_close(sum, 1.0, 1e-14));
  // Risks are |cut - 8| / 16, so the extremes are 0 and 1/2.
  double lo = 1.0, hi = 0.0;
  for (double r : thr.true_risks) {
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(lo == 0.0);
  CHECK(rel_close(hi, 0.5, 1e-14));
  CHECK(thr.pattern_count == 16);

  const auto single = single_hypothesis_half_scenario();
  CHECK(single.point_count() == 2);
  CHECK(single.hypothesis_count() == 1);
  CHECK(rel_close(single.true_risks[0], 0.5, 1e-15));
  CHECK(single.pattern_count == 1);

  const auto scales = pareto_scale_scenario();
  CHECK(scales.hypothesis_count() == 5);
  CHECK(rel_close(scales.base.shape, 2.5, 1e-15));
  CHECK(rel_close(scales.true_mean(2), 1.6666666666666667, 1e-14));
  CHECK(rel_close(scales.true_moment(2, 2.0), 5.0, 1e-14));
}

TEST_CASE("binary scenario construction validates its inputs") {
  CHECK_THROWS_AS(((void)BinaryScenario::build({0.5, 0.6}, {{1, 0}})), DomainError);
  CHECK_THROWS_AS(((void)BinaryScenario::build({}, {{}})), DomainError);
  CHECK_THROWS_AS(((void)BinaryScenario::build({0.5, -0.5}, {{1, 0}})), DomainError);
  const auto ok = BinaryScenario::build({0.25, 0.75}, {{1, 0}, {1, 0}, {0, 1}});
  CHECK(ok.hypothesis_count() == 2);  // duplicate row collapsed
  CHECK(rel_close(ok.true_risks[0], 0.25, 1e-15));
  CHECK(rel_close(ok.true_risks[1], 0.75, 1e-15));
}

TEST_CASE("point sampling follows the cumulative distribution") {
  const auto single = single_hypothesis_half_scenario();
  auto gen = reldev::rng::stream(5, 0);
  std::int64_t zeros = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    if (single.sample_point(gen) == 0) ++zeros;
  }
  const double hat = static_cast<double>(zeros) / n;
  CHECK(std::abs(hat - 0.5) < 4.0 * 0.5 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("pareto draws match the closed-form mean and tail") {
  const auto scales = pareto_scale_scenario();
  auto gen = reldev::rng::stream(17, 0);
  const int n = 200000;
  double sum = 0.0;
  std::int64_t above_two = 0;
  for (int i = 0; i < n; ++i) {
    const double z = scales.draw(gen);
    CHECK(z >= 1.0);
    sum += z;
    if (z > 2.0) ++above_two;
  }
  const double mean = sum / n;
  // Var(z) = 20/9 for shape 2.5; allow four standard errors.
  CHECK(std::abs(mean - 5.0 / 3.0) < 4.0 * std::sqrt(20.0 / 9.0 / n));
  const double tail = static_cast<double>(above_two) / n;
  const double want = std::pow(0.5, 2.5);
  CHECK(std::abs(tail - want) < 4.0 * std::sqrt(want * (1.0 - want) / n));
}

TEST_CASE("binary sup statistic matches hand computations") {
  const auto thr = threshold_binary_scenario();
  // Every draw lands on point 0, which no hypothesis misclassifies.
  std::vector<std::int64_t> counts(16, 0);
  counts[0] = 100;
  const double tau = 0.01;
  const double want = 0.5 / std::sqrt(0.5 + tau);
  CHECK(rel_close(sup_deviation(Statistic::one_sided_true_minus_emp, thr, counts, 100, 2.0,
                                tau, 0.0),
                  want, 1e-14));
  // The reverse direction peaks at the zero-risk hypothesis: (0 - 0) / sqrt(tau).
  CHECK(sup_deviation(Statistic::one_sided_emp_minus_true, thr, counts, 100, 2.0, tau, 0.0) ==
        0.0);
  // All hypotheses are sample-consistent, so the realizable sup is the top risk.
  CHECK(rel_close(sup_deviation(Statistic::fast_rate_realizable, thr, counts, 100, 2.0, tau,
                                0.0),
                  0.5, 1e-14));
  // Linear excess with factor 1: max R - 2 R_hat = max R.
  CHECK(rel_close(sup_deviation(Statistic::linear_excess, thr, counts, 100, 2.0, tau, 1.0),
                  0.5, 1e-14));
}

TEST_CASE("single-hypothesis statistic takes its three exact values") {
  const auto single = single_hypothesis_half_scenario();
  const double tau = 0.5;
  // k errors out of 2 -> (1/2 - k/2) / sqrt(1/2 + 1/2).
  const std::vector<std::int64_t> none = {0, 2};
  const std::vector<std::int64_t> one = {1, 1};
  const std::vector<std::int64_t> both = {2, 0};
  CHECK(sup_deviation(Statistic::one_sided_true_minus_emp, single, none, 2, 2.0, tau, 0.0) ==
        0.5);
  CHECK(sup_deviation(Statistic::one_sided_true_minus_emp, single, one, 2, 2.0, tau, 0.0) ==
        0.0);
  CHECK(sup_deviation(Statistic::one_sided_true_minus_emp, single, both, 2, 2.0, tau, 0.0) ==
        -0.5);
}

TEST_CASE("symmetrized statistic is antisymmetric with a pooled denominator") {
  const auto single = single_hypothesis_half_scenario();
  const std::vector<std::int64_t> all_errors = {2, 0};
  const std::vector<std::int64_t> no_errors = {0, 2};
  const double forward =
      sup_deviation_symmetrized(single, all_errors, no_errors, 2, 2.0);
  const double backward =
      sup_deviation_symmetrized(single, no_errors, all_errors, 2, 2.0);
  // (0 - 1) / sqrt((1 + 0 + 1/2) / 2) = -2/sqrt(3).
  CHECK(rel_close(forward, -1.1547005383792515, 1e-14));
  CHECK(forward == -backward);
}

TEST_CASE("zero denominators without smoothing are rejected") {
  const auto thr = threshold_binary_scenario();
  std::vector<std::int64_t> counts(16, 0);
  counts[0] = 100;
  CHECK_THROWS_AS((void)sup_deviation(Statistic::one_sided_emp_minus_true, thr, counts, 100,
                                      2.0, 0.0, 0.0),
                  DomainError);
  // The same error surfaces from a full run configured with tau = 0.
  ExperimentConfig config = threshold_config();
  config.tau = 0.0;
  config.validate();
  CHECK_THROWS_AS((void)run_experiment(config), DomainError);
}

TEST_CASE("trial statistics are deterministic, partitionable, and seed-sensitive") {
  const auto config = threshold_config();
  const auto full = trial_statistics(config, 0, config.trials);
  REQUIRE(static_cast<std::int64_t>(full.size()) == config.trials);

  const auto serial = trial_statistics_serial(config, 0, config.trials);
  REQUIRE(full.size() == serial.size());
  for (std::size_t i = 0; i < full.size(); ++i) CHECK(full[i] == serial[i]);

  auto head = trial_statistics(config, 0, 70);
  const auto tail = trial_statistics(config, 70, config.trials);
  head.insert(head.end(), tail.begin(), tail.end());
  REQUIRE(head.size() == full.size());
  for (std::size_t i = 0; i < full.size(); ++i) CHECK(full[i] == head[i]);

  ExperimentConfig other = config;
  other.master_seed = 12;
  const auto shifted = trial_statistics(other, 0, other.trials);
  bool any_different = false;
  for (std::size_t i = 0; i < full.size(); ++i) {
    if (shifted[i] != full[i]) any_different = true;
  }
  CHECK(any_different);
}

TEST_CASE("reports are byte-identical across runs and kernels") {
  const auto config = threshold_config();
  const auto a = reldev::report_io::trial_report_json(run_experiment(config));
  const auto b = reldev::report_io::trial_report_json(run_experiment(config));
  const auto c = reldev::report_io::trial_report_json(run_experiment_serial(config));
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("report rows carry the wilson band and the bound value") {
  const auto config = threshold_config();
  const auto report = run_experiment(config);
  const auto resolved = resolve_capacity(config);
  CHECK(report.capacity_value == 16);
  REQUIRE(report.rows.size() == 2);
  for (const auto& row : report.rows) {
    CHECK(row.trials == config.trials);
    CHECK(row.frequency ==
          static_cast<double>(row.exceedances) / static_cast<double>(row.trials));
    CHECK(row.frequency_upper ==
          frequency_upper(row.exceedances, row.trials, config.confidence));
    const auto rhs = bound_rhs(config, row.epsilon, resolved.capacity);
    CHECK(row.rhs == rhs.value);
    CHECK(row.vacuous == rhs.vacuous);
    if (row.vacuous) {
      CHECK(row.verdict == "vacuous");
    } else {
      CHECK((row.verdict == "pass" || row.verdict == "fail"));
    }
  }
  CHECK(!report.any_fail());
}

TEST_CASE("frequency upper bound is the one-sided score interval") {
  CHECK(frequency_upper(0, 2000, 0.99) == reldev::stats::wilson_upper(0, 2000, 0.99));
  CHECK(frequency_upper(7, 500, 0.95) == reldev::stats::wilson_upper(7, 500, 0.95));
}

TEST_CASE("statistic thresholds scale with the bound family") {
  ExperimentConfig config = threshold_config();
  CHECK(statistic_threshold(config, 0.3) == 0.3);

  ExperimentConfig gamma = threshold_config();
  gamma.bound_id = "cor9";
  gamma.model = pareto_scale_scenario();
  gamma.tau = 0.001;
  gamma.epsilon_grid = {0.4};
  gamma.validate();
  CHECK(rel_close(statistic_threshold(gamma, 0.4),
                  reldev::bounds::gamma_factor(2.0, 0.4, 0.001) * 0.4, 1e-14));

  ExperimentConfig lambda = gamma;
  lambda.bound_id = "cor15";
  lambda.alpha = 2.25;
  lambda.validate();
  CHECK(rel_close(statistic_threshold(lambda, 0.4),
                  reldev::bounds::lambda_factor(2.25, 0.001) * 0.4, 1e-14));
}

TEST_CASE("capacity resolution counts patterns or threshold cuts") {
  const auto binary = resolve_capacity(threshold_config());
  CHECK(binary.capacity.value == 16.0);

  ExperimentConfig pareto = threshold_config();
  pareto.bound_id = "cor9";
  pareto.model = pareto_scale_scenario();
  pareto.tau = 0.001;
  pareto.epsilon_grid = {0.4};
  pareto.validate();
  const auto emp = resolve_capacity(pareto);
  // 2m = 200 reference points admit at most 201 threshold patterns.
  CHECK(emp.capacity.value <= 201.0);
  CHECK(emp.capacity.value >= 100.0);
  CHECK(!emp.notes.empty());
}

TEST_CASE("config validation rejects inconsistent requests") {
  ExperimentConfig config = threshold_config();

  ExperimentConfig bad = config;
  bad.trials = 50;
  CHECK_THROWS_WITH_AS(bad.validate(), "config: trials >= 100 required (got 50)", ConfigError);

  bad = config;
  bad.epsilon_grid = {0.3, 0.3};
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = config;
  bad.epsilon_grid = {};
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = config;
  bad.statistic = Statistic::symmetrized_two_sample;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = config;
  bad.bound_id = "cor15";  // needs alpha > 2
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = config;
  bad.bound_id = "nope";
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = config;
  bad.bound_id = "cor6";  // linear family wants the linear statistic and v > 0
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  // The moment order for this family is capped at 2.
  bad = config;
  bad.bound_id = "cor9";
  bad.model = ParetoScenario{{2.5, 1.0}, {0.5, 1.0, 1.5}};
  bad.alpha = 2.2;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  // A Pareto scenario with alpha at the tail exponent has no alpha-th
  // moment, so the ratio statistic is undefined.
  bad = config;
  bad.bound_id = "cor9";
  bad.model = ParetoScenario{{2.0, 1.0}, {0.5, 1.0, 1.5}};
  bad.alpha = 2.0;
  bad.tau = 0.001;
  bad.epsilon_grid = {0.4};
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("gamma preconditions are enforced per grid entry at config time") {
  ExperimentConfig config = threshold_config();
  config.bound_id = "cor9";
  config.model = pareto_scale_scenario();
  config.tau = 0.001;
  config.epsilon_grid = {0.4, 0.44};
  config.validate();  // fine

  config.epsilon_grid = {0.05, 0.4};  // tau^(1/2) = 0.0316 >= 0.05^2
  CHECK_THROWS_AS(config.validate(), ConfigError);
}

TEST_CASE("symmetrization check separates regimes and directions") {
  ExperimentConfig config = threshold_config();
  config.trials = 100;
  config.epsilon_grid = {0.05, 0.2};
  config.validate();
  const auto reports = symmetrization_ratio_check(config);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].direction == "true_minus_emp");
  CHECK(reports[1].direction == "emp_minus_true");
  for (const auto& rep : reports) {
    REQUIRE(rep.rows.size() == 2);
    CHECK(!rep.rows[0].regime_ok);  // 100 * 0.05^2 = 0.25 < 1
    CHECK(rep.rows[1].regime_ok);
    for (const auto& row : rep.rows) {
      CHECK((row.outcome == "pass" || row.outcome == "inconclusive" ||
             row.outcome == "violation"));
      CHECK(row.factor_ok == (row.outcome != "violation"));
    }
  }
}

TEST_CASE("symmetrization check requires a binary scenario and smoothing") {
  ExperimentConfig pareto = threshold_config();
  pareto.bound_id = "cor9";
  pareto.model = pareto_scale_scenario();
  pareto.tau = 0.001;
  pareto.epsilon_grid = {0.4};
  pareto.validate();
  CHECK_THROWS_AS((void)symmetrization_ratio_check(pareto), ConfigError);

  ExperimentConfig no_tau = threshold_config();
  no_tau.tau = 0.0;
  no_tau.validate();
  CHECK_THROWS_AS((void)symmetrization_ratio_check(no_tau), ConfigError);
}
