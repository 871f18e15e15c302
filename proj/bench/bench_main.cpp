// Compares the OpenMP kernels against their serial reference implementations.
// On a single-core host the parallel variants should track the serial ones;
// with more cores the scan and trial loops should scale close to linearly.

#include <benchmark/benchmark.h>

#include "reldev/binomial.hpp"
#include "reldev/capacity.hpp"
#include "reldev/experiment.hpp"
#include "reldev/scenario.hpp"

namespace {

reldev::binomial::ScanOptions scan_options() {
  reldev::binomial::ScanOptions options;
  options.max_trials = 60;
  options.grid_denominator = 500;
  options.record_points = false;
  return options;
}

void BM_scan_serial(benchmark::State& state) {
  auto options = scan_options();
  options.parallel = false;
  for (auto _ : state) {
    auto result = reldev::binomial::scan_tail_minimum_serial(
        reldev::binomial::Tail::geq_mean, options);
    benchmark::DoNotOptimize(result.min_tail);
  }
}
BENCHMARK(BM_scan_serial);

void BM_scan_parallel(benchmark::State& state) {
  auto options = scan_options();
  for (auto _ : state) {
    auto result =
        reldev::binomial::scan_tail_minimum(reldev::binomial::Tail::geq_mean, options);
    benchmark::DoNotOptimize(result.min_tail);
  }
}
BENCHMARK(BM_scan_parallel);

reldev::capacity::HypothesisTable growth_table() {
  // Interval class on 18 points: rich enough that growth enumeration has work to do.
  std::vector<std::vector<std::uint8_t>> rows;
  const int n = 18;
  for (int lo = 0; lo < n; ++lo) {
    for (int hi = lo; hi <= n; ++hi) {
      std::vector<std::uint8_t> row(n, 0);
      for (int i = lo; i < hi; ++i) row[static_cast<std::size_t>(i)] = 1;
      rows.push_back(row);
    }
  }
  return reldev::capacity::HypothesisTable(n, rows);
}

void BM_growth_serial(benchmark::State& state) {
  const auto table = growth_table();
  reldev::capacity::EnumerationBudget budget;
  budget.max_subset = 10;
  for (auto _ : state) {
    auto value = reldev::capacity::growth_function_serial(table, 9, budget);
    benchmark::DoNotOptimize(value);
  }
}
BENCHMARK(BM_growth_serial);

void BM_growth_parallel(benchmark::State& state) {
  const auto table = growth_table();
  reldev::capacity::EnumerationBudget budget;
  budget.max_subset = 10;
  for (auto _ : state) {
    auto value = reldev::capacity::growth_function(table, 9, budget);
    benchmark::DoNotOptimize(value);
  }
}
BENCHMARK(BM_growth_parallel);

reldev::experiment::ExperimentConfig trial_config() {
  reldev::experiment::ExperimentConfig config;
  config.bound_id = "thm3";
  config.statistic = reldev::experiment::Statistic::one_sided_true_minus_emp;
  config.model = reldev::scenario::threshold_binary_scenario();
  config.sample_size = 200;
  config.trials = 400;
  config.alpha = 2.0;
  config.tau = 0.01;
  config.epsilon_grid = {0.3};
  config.validate();
  return config;
}

void BM_trials_serial(benchmark::State& state) {
  const auto config = trial_config();
  for (auto _ : state) {
    auto stats = reldev::experiment::trial_statistics_serial(config, 0, config.trials);
    benchmark::DoNotOptimize(stats.data());
  }
}
BENCHMARK(BM_trials_serial);

void BM_trials_parallel(benchmark::State& state) {
  const auto config = trial_config();
  for (auto _ : state) {
    auto stats = reldev::experiment::trial_statistics(config, 0, config.trials);
    benchmark::DoNotOptimize(stats.data());
  }
}
BENCHMARK(BM_trials_parallel);

}  // namespace

BENCHMARK_MAIN();
