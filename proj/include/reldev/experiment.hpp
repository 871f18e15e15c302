#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reldev/bounds.hpp"
#include "reldev/scenario.hpp"

namespace reldev::experiment {

// Deviation statistic computed per trial; the supremum runs over the
// hypothesis set in all cases.
enum class Statistic {
  one_sided_true_minus_emp,  // (true - empirical) / root(true moment + tau)
  one_sided_emp_minus_true,  // (empirical - true) / root(empirical moment + tau)
  symmetrized_two_sample,    // two-sample difference over the pooled root
  fast_rate_realizable,      // largest true risk among empirically perfect rules
  linear_excess,             // true - (1 + v) * empirical
};

std::string statistic_name(Statistic stat);
Statistic statistic_from_name(const std::string& name);

struct ExperimentConfig {
  std::string bound_id = "thm3";
  Statistic statistic = Statistic::one_sided_true_minus_emp;
  scenario::Scenario model = scenario::threshold_binary_scenario();
  std::int64_t sample_size = 200;
  std::int64_t trials = 2000;
  double alpha = 2.0;
  double tau = 0.0;
  double excess_factor = 0.0;  // the v in the linear-excess statistic
  std::vector<double> epsilon_grid;
  double confidence = 0.99;
  std::uint64_t master_seed = 1;

  // Presentation metadata carried through load/serialize untouched; the
  // computation never reads these. scenario_builtin remembers that the model
  // came from a named canned scenario so serialization can echo the name
  // instead of the expanded tables.
  std::string description;
  std::string scenario_description;
  std::string scenario_builtin;

  // Full cross-field validation: grid shape, statistic/bound compatibility,
  // moment finiteness, and the per-epsilon threshold preconditions.
  void validate() const;
};

// One-sided score-interval upper bound on an exceedance frequency.
double frequency_upper(std::int64_t successes, std::int64_t trials, double confidence);

// Exact supremum of the chosen deviation statistic over the hypothesis set.
// Binary models take per-point sample counts; the heavy-tailed model takes
// the raw draws. Returns -infinity when no hypothesis qualifies (possible
// only for the realizable statistic).
double sup_deviation(Statistic stat, const scenario::BinaryScenario& s,
                     const std::vector<std::int64_t>& counts, std::int64_t sample_size,
                     double alpha, double tau, double excess_factor);
double sup_deviation_symmetrized(const scenario::BinaryScenario& s,
                                 const std::vector<std::int64_t>& counts_first,
                                 const std::vector<std::int64_t>& counts_second,
                                 std::int64_t sample_size, double alpha);
double sup_deviation(Statistic stat, const scenario::ParetoScenario& s,
                     const std::vector<double>& draws, double alpha, double tau);

// Statistics for trials [first, last). Trial t always uses the generator
// rng::stream(master_seed, t), so any partition of the trial range produces
// the same values and the parallel and serial kernels agree bitwise.
std::vector<double> trial_statistics(const ExperimentConfig& config, std::int64_t first,
                                     std::int64_t last);
std::vector<double> trial_statistics_serial(const ExperimentConfig& config, std::int64_t first,
                                            std::int64_t last);

// Capacity the report plugs into the bound: the exact pattern count for
// binary models (threshold-class patterns when the bound reads losses through
// thresholds), or the empirical threshold-class shatter count of a reference
// sample clamped by the analytic cut bound for heavy-tailed scale families.
struct CapacityResolution {
  bounds::Capacity capacity;
  std::vector<std::string> notes;
};
CapacityResolution resolve_capacity(const ExperimentConfig& config);

struct EpsilonRow {
  double epsilon = 0.0;
  double threshold = 0.0;  // statistic cutoff: epsilon itself or a factor times it
  std::int64_t exceedances = 0;
  std::int64_t trials = 0;
  double frequency = 0.0;
  double frequency_upper = 0.0;
  double rhs = 1.0;
  bool vacuous = true;
  std::string verdict = "vacuous";  // pass | vacuous | fail
};

struct TrialReport {
  std::string bound_id;
  Statistic statistic = Statistic::one_sided_true_minus_emp;
  std::string scenario_kind;  // binary | pareto
  std::int64_t sample_size = 0;
  std::int64_t trials = 0;
  double alpha = 0.0;
  double tau = 0.0;
  double excess_factor = 0.0;
  double confidence = 0.0;
  std::uint64_t master_seed = 0;
  double capacity_value = 0.0;
  std::vector<EpsilonRow> rows;
  std::vector<std::string> warnings;

  bool any_fail() const;
};

TrialReport run_experiment(const ExperimentConfig& config);
TrialReport run_experiment_serial(const ExperimentConfig& config);

// Statistic threshold the bound family attaches to a grid epsilon.
double statistic_threshold(const ExperimentConfig& config, double epsilon);

// RHS of the bound family at a grid epsilon, given the resolved capacity.
bounds::ProbabilityBound bound_rhs(const ExperimentConfig& config, double epsilon,
                                   const bounds::Capacity& cap);

// Factor-4 symmetrization comparison: estimates both one-sided deviation
// probabilities and the two-sample symmetrized probability on the same model
// and checks the one-sided <= 4 * symmetrized dominance through the score
// interval bands. Each direction gets its own report.
struct SymmetrizationRow {
  double epsilon = 0.0;
  bool regime_ok = false;  // sample_size * epsilon^(alpha/(alpha-1)) > 1
  std::int64_t one_sided_exceedances = 0;
  std::int64_t symmetrized_exceedances = 0;
  double lhs_one_sample = 0.0;
  double lhs_one_sample_upper = 0.0;
  double lhs_one_sample_lower = 0.0;
  double lhs_symmetrized = 0.0;
  double lhs_symmetrized_upper = 0.0;
  double lhs_symmetrized_lower = 0.0;
  std::string outcome = "inconclusive";  // pass | inconclusive | violation
  bool factor_ok = true;                 // outcome != violation
};

struct SymmetrizationReport {
  std::string direction;  // true_minus_emp | emp_minus_true
  std::int64_t sample_size = 0;
  std::int64_t trials = 0;
  double alpha = 0.0;
  double tau = 0.0;
  double confidence = 0.0;
  std::uint64_t master_seed = 0;
  std::vector<SymmetrizationRow> rows;
};

std::vector<SymmetrizationReport> symmetrization_ratio_check(const ExperimentConfig& config);

}  // namespace reldev::experiment
