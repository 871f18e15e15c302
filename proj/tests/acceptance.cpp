// Acceptance gate: runs the ten release criteria end to end and prints one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails. An
// optional argument points at the directory holding the shipped experiment
// configurations (default: ./configs, searched upward a few levels).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "reldev/analytic.hpp"
#include "reldev/binomial.hpp"
#include "reldev/bounds.hpp"
#include "reldev/capacity.hpp"
#include "reldev/experiment.hpp"
#include "reldev/report_io.hpp"
#include "reldev/scenario.hpp"
#include "reldev/stats.hpp"

namespace {

namespace binomial = reldev::binomial;
namespace bounds = reldev::bounds;
namespace analytic = reldev::analytic;
namespace capacity = reldev::capacity;
namespace experiment = reldev::experiment;
namespace scenario = reldev::scenario;
namespace stats = reldev::stats;
using clock_type = std::chrono::steady_clock;

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string format(const char* fmt, ...) {
  char buffer[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buffer, sizeof(buffer), fmt, args);
  va_end(args);
  return buffer;
}

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

bool rel_close(double got, double want, double tol) {
  return std::abs(got - want) <= tol * std::max(std::abs(want), 1e-300);
}

std::filesystem::path find_configs(int argc, char** argv) {
  if (argc > 1) return argv[1];
  for (const char* candidate : {"configs", "../configs", "../../configs", "../../../configs"}) {
    if (std::filesystem::exists(std::filesystem::path(candidate) /
                                "thm3_threshold_m200.json")) {
      return candidate;
    }
  }
  return "configs";
}

// --- criterion 1: exhaustive lower-tail floor for the at-or-above tail -----

Outcome criterion1() {
  const auto start = clock_type::now();
  binomial::ScanOptions options;  // m up to 200, p step 1e-3, p > 1/m
  options.record_points = false;
  const auto scan = binomial::scan_tail_minimum(binomial::Tail::geq_mean, options);
  const double elapsed = seconds_since(start);

  const double near_boundary =
      binomial::tail_at_mean({2, 0.5001}, binomial::Tail::geq_mean);
  const double gap = near_boundary - 0.25;

  Outcome out;
  out.ok = scan.min_tail > 0.25 && scan.all_above_quarter && scan.argmin_trials == 2 &&
           scan.argmin_p == 0.501 && scan.skipped_trials.empty() && gap > 0.0 &&
           gap < 1.1e-4 && elapsed < 10.0;
  out.detail = format(
      "at-or-above tail floor: min %.9f at (m=%lld, p=%.3f), boundary gap %.4e, %.1f s",
      scan.min_tail, static_cast<long long>(scan.argmin_trials), scan.argmin_p, gap, elapsed);
  return out;
}

// --- criterion 2: mirrored tail floor plus the reflection identity ---------

Outcome criterion2() {
  binomial::ScanOptions options;
  options.record_points = true;
  const auto scan = binomial::scan_tail_minimum(binomial::Tail::leq_mean, options);

  double worst = 0.0;
  for (const auto& point : scan.points) {
    const double mirror = binomial::tail_at_mean({point.trials, 1.0 - point.p},
                                                 binomial::Tail::geq_mean);
    worst = std::max(worst, std::abs(point.tail - mirror));
  }

  Outcome out;
  out.ok = scan.min_tail > 0.25 && scan.all_above_quarter && scan.argmin_trials == 2 &&
           scan.argmin_p == 0.499 && worst < 1e-12;
  out.detail = format(
      "at-or-below tail floor: min %.9f at (m=%lld, p=%.3f); reflection gap %.2e over %zu "
      "grid points",
      scan.min_tail, static_cast<long long>(scan.argmin_trials), scan.argmin_p, worst,
      scan.points.size());
  return out;
}

// --- criterion 3: sqrt-log envelope against the 3/4-power envelope ---------

Outcome criterion3() {
  const int count = 200;
  bool holds_everywhere = true;
  bool strict_below_one = true;
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    double eps = std::pow(10.0, -6.0 * (1.0 - t));
    if (i == count - 1) eps = 1.0;
    const auto check = analytic::sqrt_log_approx(eps, 0.75);
    holds_everywhere = holds_everywhere && check.holds;
    if (i < count - 1) {
      strict_below_one = strict_below_one && check.lhs < check.rhs;
    } else {
      strict_below_one = strict_below_one && check.lhs == 1.0 && check.rhs == 1.0;
    }
  }

  // A slightly smaller exponent already fails near one.
  const auto violation = analytic::sqrt_log_approx(0.99, 0.76);
  const bool counterexample = !violation.holds && violation.lhs > violation.rhs &&
                              rel_close(violation.lhs, 0.99248434097723093, 1e-10) &&
                              rel_close(violation.rhs, 0.99239084209152475, 1e-10);

  Outcome out;
  out.ok = holds_everywhere && strict_below_one && counterexample;
  out.detail = format(
      "power envelope holds at exponent 0.75 on %d log-grid points (equality only at 1); "
      "exponent 0.76 fails at 0.99 (%.6f > %.6f)",
      count, violation.lhs, violation.rhs);
  return out;
}

// --- criterion 4: moment-factor consistency at the quadratic order ---------

Outcome criterion4() {
  // Independent expansion of the general factor at alpha = 2.
  double worst = 0.0;
  int points = 0;
  for (int i = 1; i <= 20; ++i) {
    for (int j = 0; j <= 14; ++j) {
      const double eps = static_cast<double>(i) / 20.0;
      const double tau = static_cast<double>(j) / 20.0;
      const double closed = 0.5 * std::sqrt(1.0 + tau) +
                            std::sqrt(1.0 + 0.25 * std::sqrt(tau)) *
                                std::sqrt(1.0 + 0.5 * std::log(1.0 / eps));
      worst = std::max(worst, std::abs(bounds::gamma_factor(2.0, eps, tau) - closed));
      ++points;
    }
  }

  const bool anchors = std::abs(bounds::gamma_factor(2.0, 1.0, 0.0) - 1.5) < 1e-14 &&
                       std::abs(bounds::psi_factor(4.0) - std::pow(2.0, 0.25)) < 1e-14 &&
                       bounds::lambda_factor(4.0, 0.0) == bounds::psi_factor(4.0);

  Outcome out;
  out.ok = worst < 1e-12 && anchors;
  out.detail = format(
      "quadratic-order factor matches its closed form on %d grid points (worst gap %.2e); "
      "anchor values exact",
      points, worst);
  return out;
}

// --- criterion 5: dominance of the root-moment bound over the integral -----

Outcome criterion5() {
  struct Case {
    double shape;
    double order;
  };
  const Case cases[] = {{5.0, 4.0}, {4.0, 3.0}, {3.0, 2.5}};

  bool ok = true;
  double min_slack = 1e300;
  double worst_rel = 0.0;
  for (const auto& c : cases) {
    const analytic::Pareto model{c.shape, 1.0};
    analytic::QuadratureOptions options;
    options.scale_hint = 1.0;

    const double integral_quad = analytic::tail_integral_moment(
        [&model](double t) { return std::sqrt(model.tail(t)); }, 1.0, options);
    const double integral_closed = model.sqrt_tail_integral();
    const double moment_quad = analytic::tail_integral_moment(
        [&model](double t) { return model.tail(t); }, c.order, options);
    const double moment_closed = model.moment(c.order);

    const double rel_integral = std::abs(integral_quad - integral_closed) / integral_closed;
    const double rel_moment = std::abs(moment_quad - moment_closed) / moment_closed;
    worst_rel = std::max({worst_rel, rel_integral, rel_moment});

    const double bound = bounds::psi_factor(c.order) *
                         std::pow(moment_closed, 1.0 / c.order);
    const double slack = bound - integral_quad;
    min_slack = std::min(min_slack, slack);
    ok = ok && rel_integral <= 1e-6 && rel_moment <= 1e-6 && slack > 0.0;
  }

  Outcome out;
  out.ok = ok;
  out.detail = format(
      "root-moment bound dominates the sqrt-tail integral on 3 heavy-tail cases "
      "(min slack %.4f, worst quadrature/closed-form gap %.1e)",
      min_slack, worst_rel);
  return out;
}

// --- criterion 6: Monte Carlo frequency dominance across every family ------

Outcome criterion6(const std::filesystem::path& configs) {
  const auto start = clock_type::now();
  const char* files[] = {
      "thm3_threshold_m200.json", "thm3_threshold_m100_reverse.json",
      "cor9_pareto_scales.json",  "cor9_pareto_scales_reverse.json",
      "cor15_pareto_scales.json", "cor6_linear_excess.json",
      "cor7_realizable.json",
  };

  int rows = 0;
  int fails = 0;
  int vacuous = 0;
  for (const char* file : files) {
    const auto config = reldev::report_io::load_config((configs / file).string());
    const auto report = experiment::run_experiment(config);
    for (const auto& row : report.rows) {
      ++rows;
      if (row.verdict == "fail") ++fails;
      if (row.verdict == "vacuous") ++vacuous;
    }
  }
  const double elapsed = seconds_since(start);

  Outcome out;
  out.ok = fails == 0 && rows > 0 && elapsed < 300.0;
  out.detail = format(
      "dominance suite: %zu configurations, %d epsilon rows, %d fail verdicts, %d vacuous, "
      "%.1f s",
      std::size(files), rows, fails, vacuous, elapsed);
  return out;
}

// --- criterion 7: exact enumeration oracle for the one-rule model ----------

Outcome criterion7(const std::filesystem::path& configs) {
  const auto config =
      reldev::report_io::load_config((configs / "single_half_exact.json").string());
  const auto report = experiment::run_experiment(config);
  if (report.rows.size() != 1) {
    return {false, "expected exactly one epsilon row"};
  }
  const auto& row = report.rows.front();

  // With two samples of a half-risk rule the statistic exceeds the 0.3
  // threshold exactly when both samples land correct: probability 1/4.
  const double lower = stats::wilson_lower(row.exceedances, row.trials, config.confidence);
  const double upper = row.frequency_upper;

  Outcome out;
  out.ok = lower <= 0.25 && 0.25 <= upper;
  out.detail = format(
      "exact exceedance probability 0.25 lies in the 99%% band [%.5f, %.5f] around %lld/%lld",
      lower, upper, static_cast<long long>(row.exceedances),
      static_cast<long long>(row.trials));
  return out;
}

// --- criterion 8: one-sample vs paired-sample factor of four ---------------

Outcome criterion8(const std::filesystem::path& configs) {
  const auto config =
      reldev::report_io::load_config((configs / "symmetrization_threshold.json").string());
  const auto reports = experiment::symmetrization_ratio_check(config);

  bool ok = reports.size() == 2;
  int in_regime = 0;
  int inconclusive = 0;
  for (const auto& rep : reports) {
    for (const auto& row : rep.rows) {
      ok = ok && row.regime_ok && row.factor_ok && row.outcome != "violation";
      if (row.regime_ok) ++in_regime;
      if (row.outcome == "inconclusive") ++inconclusive;
    }
  }

  Outcome out;
  out.ok = ok;
  out.detail = format(
      "factor-of-four pairing check: %d in-regime rows across both directions, no confident "
      "violation (%d inconclusive)",
      in_regime, inconclusive);
  return out;
}

// --- criterion 9: combinatorial capacity oracles ----------------------------

Outcome criterion9() {
  // One-sided threshold rules on ten points.
  std::vector<std::vector<std::uint8_t>> threshold_rows;
  for (int cut = 0; cut <= 10; ++cut) {
    std::vector<std::uint8_t> row(10);
    for (int i = 0; i < 10; ++i) row[static_cast<std::size_t>(i)] = (i >= cut) ? 1 : 0;
    threshold_rows.push_back(std::move(row));
  }
  const capacity::HypothesisTable thresholds(10, std::move(threshold_rows));

  bool ok = capacity::vc_dimension(thresholds) == 1;
  for (std::int64_t m = 1; m <= 10; ++m) {
    ok = ok && capacity::growth_function(thresholds, m) == m + 1;
  }

  // Every labeling of four points.
  std::vector<std::vector<std::uint8_t>> full_rows;
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<std::uint8_t> row(4);
    for (int i = 0; i < 4; ++i) {
      row[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((mask >> i) & 1);
    }
    full_rows.push_back(std::move(row));
  }
  const capacity::HypothesisTable full(4, std::move(full_rows));

  ok = ok && capacity::vc_dimension(full) == 4;
  for (std::int64_t m = 1; m <= 4; ++m) {
    ok = ok && capacity::growth_function(full, m) == (std::int64_t{1} << m);
  }

  // Growth never beats the (en/d)^d envelope on either class.
  const struct {
    const capacity::HypothesisTable* table;
    std::int64_t dimension;
  } classes[] = {{&thresholds, 1}, {&full, 4}};
  for (const auto& entry : classes) {
    for (std::int64_t m = std::max<std::int64_t>(entry.dimension, 1);
         m <= entry.table->domain_size(); ++m) {
      const double grown = static_cast<double>(capacity::growth_function(*entry.table, m));
      ok = ok && grown <= bounds::sauer_growth_upper(entry.dimension, m) * (1.0 + 1e-12);
    }
  }

  // A family of constant losses orders no pair of points.
  const capacity::LossTable constants(
      5, {{0.5, 0.5, 0.5, 0.5, 0.5}, {1.5, 1.5, 1.5, 1.5, 1.5}, {2.5, 2.5, 2.5, 2.5, 2.5}});
  ok = ok && capacity::pseudo_dimension(constants) == 1;

  Outcome out;
  out.ok = ok;
  out.detail =
      "threshold rules: growth m+1 and dimension 1; free class on 4 points: growth 2^m and "
      "dimension 4; growth within the (en/d)^d envelope; constant losses have "
      "pseudo-dimension 1";
  return out;
}

// --- criterion 10: determinism and partition merging ------------------------

Outcome criterion10() {
  experiment::ExperimentConfig config;
  config.bound_id = "thm3";
  config.statistic = experiment::Statistic::one_sided_true_minus_emp;
  config.model = scenario::threshold_binary_scenario();
  config.sample_size = 100;
  config.trials = 400;
  config.alpha = 2.0;
  config.tau = 0.01;
  config.epsilon_grid = {0.3, 0.45};
  config.confidence = 0.99;
  config.master_seed = 33;
  config.validate();

  const std::string first = reldev::report_io::trial_report_json(
      experiment::run_experiment(config));
  const std::string second = reldev::report_io::trial_report_json(
      experiment::run_experiment(config));
  const std::string serial = reldev::report_io::trial_report_json(
      experiment::run_experiment_serial(config));
  bool ok = first == second && first == serial;

  // Two partitioned passes reproduce the single-pass statistics exactly.
  const auto full = experiment::trial_statistics(config, 0, config.trials);
  auto merged = experiment::trial_statistics(config, 0, 150);
  const auto rest = experiment::trial_statistics(config, 150, config.trials);
  merged.insert(merged.end(), rest.begin(), rest.end());
  ok = ok && merged == full;

  const auto report = experiment::run_experiment(config);
  for (const auto& row : report.rows) {
    const auto count = std::count_if(merged.begin(), merged.end(),
                                     [&](double v) { return v > row.threshold; });
    ok = ok && count == row.exceedances;
  }

  Outcome out;
  out.ok = ok;
  out.detail = format(
      "byte-identical reports across repeated and serial runs; partitioned trials merge to "
      "the single-run counts on %zu epsilon rows",
      report.rows.size());
  return out;
}

int failures = 0;

void run_criterion(int number, const std::function<Outcome()>& body) {
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome.ok = false;
    outcome.detail = std::string("exception: ") + e.what();
  }
  std::printf("%s criterion %d: %s\n", outcome.ok ? "PASS" : "FAIL", number,
              outcome.detail.c_str());
  std::fflush(stdout);
  if (!outcome.ok) ++failures;
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path configs = find_configs(argc, argv);

  run_criterion(1, criterion1);
  run_criterion(2, criterion2);
  run_criterion(3, criterion3);
  run_criterion(4, criterion4);
  run_criterion(5, criterion5);
  run_criterion(6, [&] { return criterion6(configs); });
  run_criterion(7, [&] { return criterion7(configs); });
  run_criterion(8, [&] { return criterion8(configs); });
  run_criterion(9, criterion9);
  run_criterion(10, criterion10);

  if (failures == 0) {
    std::printf("all 10 criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", failures);
  return 1;
}
