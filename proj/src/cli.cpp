#include "reldev/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "reldev/analytic.hpp"
#include "reldev/binomial.hpp"
#include "reldev/bounds.hpp"
#include "reldev/capacity.hpp"
#include "reldev/errors.hpp"
#include "reldev/experiment.hpp"
#include "reldev/report_io.hpp"

namespace reldev::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Relative output paths honor RELDEV_OUT_DIR so batch runs can redirect all
// artifacts with one environment variable.
std::string resolve_out_path(const std::string& path) {
  if (path.empty()) return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  const char* dir = std::getenv("RELDEV_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  return (std::filesystem::path(dir) / p).string();
}

void emit(const std::string& text, const std::string& out_path) {
  std::string body = text;
  if (body.empty() || body.back() != '\n') body += '\n';
  if (out_path.empty()) {
    std::cout << body;
  } else {
    report_io::write_text_file(resolve_out_path(out_path), body);
  }
}

double require_number(const CLI::App* cmd, const char* flag, double value,
                      const std::string& context) {
  if (cmd->count(flag) == 0) {
    throw UsageError(context + " requires " + flag);
  }
  return value;
}

std::int64_t require_integer(const CLI::App* cmd, const char* flag, std::int64_t value,
                             const std::string& context) {
  if (cmd->count(flag) == 0) {
    throw UsageError(context + " requires " + flag);
  }
  return value;
}

struct CapacityFlags {
  double shatter = 0.0;
  double growth = 0.0;
  std::int64_t vc = 0;
  std::int64_t pdim = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--shatter", shatter, "Capacity as an expected shatter count");
    cmd->add_option("--growth", growth, "Capacity as a growth function value");
    cmd->add_option("--vc", vc, "Capacity as a VC dimension");
    cmd->add_option("--pdim", pdim, "Capacity as a pseudo-dimension");
  }

  bounds::Capacity resolve(const CLI::App* cmd, const std::string& context) const {
    const int given = (cmd->count("--shatter") != 0) + (cmd->count("--growth") != 0) +
                      (cmd->count("--vc") != 0) + (cmd->count("--pdim") != 0);
    if (given != 1) {
      throw UsageError(context +
                       " requires exactly one of --shatter, --growth, --vc, --pdim");
    }
    if (cmd->count("--shatter")) return bounds::Capacity::expected_shatter(shatter);
    if (cmd->count("--growth")) return bounds::Capacity::growth(growth);
    if (cmd->count("--vc")) return bounds::Capacity::vc(vc);
    return bounds::Capacity::pseudo(pdim);
  }
};

std::string probability_json(const std::string& id, const bounds::ProbabilityBound& bound) {
  report_io::JsonWriter w;
  w.begin_object();
  w.key("id").value(id);
  w.key("rhs").value(bound.value);
  w.key("log_raw").value(bound.log_raw);
  w.key("vacuous").value(bound.vacuous);
  w.end_object();
  return w.take();
}

std::string scalar_json(const std::string& id, const char* key, double value) {
  report_io::JsonWriter w;
  w.begin_object();
  w.key("id").value(id);
  w.key(key).value(value);
  w.end_object();
  return w.take();
}

struct BoundCommand {
  CLI::App* cmd = nullptr;
  std::string id;
  std::string out;
  double alpha = 0.0;
  double epsilon = 0.0;
  double tau = 0.0;
  double delta = 0.0;
  double nu = 0.0;
  double v = 0.0;
  double rate = 0.0;
  double moment2 = 0.0;
  double moment = 0.0;
  std::int64_t m = 0;
  std::int64_t d = 0;
  std::int64_t n = 0;
  CapacityFlags capacity;

  void attach(CLI::App& app) {
    cmd = app.add_subcommand("bound", "Evaluate one closed-form bound or constant");
    cmd->add_option("--id", id, "Bound identifier")->required();
    cmd->add_option("--alpha", alpha, "Moment order / ratio exponent");
    cmd->add_option("--epsilon", epsilon, "Deviation level");
    cmd->add_option("--tau", tau, "Denominator smoothing constant");
    cmd->add_option("--delta", delta, "Confidence level input");
    cmd->add_option("--nu", nu, "Interpolation weight");
    cmd->add_option("--v", v, "Linear excess factor");
    cmd->add_option("--rate", rate, "Empirical rate input");
    cmd->add_option("--moment2", moment2, "Second moment of the loss");
    cmd->add_option("--moment", moment, "alpha-th moment of the loss");
    cmd->add_option("--m", m, "Sample size");
    cmd->add_option("--d", d, "Dimension input");
    cmd->add_option("--n", n, "Sample size for the growth bound");
    capacity.attach(cmd);
    cmd->add_option("--out", out, "Write the JSON result to this path");
  }

  int run() const {
    const std::string context = "bound --id " + id;
    std::string text;
    if (id == "thm3" || id == "cor9") {
      const auto cap = capacity.resolve(cmd, context);
      text = probability_json(
          id, bounds::relative_deviation_rhs(require_number(cmd, "--alpha", alpha, context),
                                             require_number(cmd, "--epsilon", epsilon, context),
                                             require_integer(cmd, "--m", m, context), cap));
    } else if (id == "sym") {
      const auto cap = capacity.resolve(cmd, context);
      text = probability_json(
          id, bounds::symmetrized_rhs(require_number(cmd, "--alpha", alpha, context),
                                      require_number(cmd, "--epsilon", epsilon, context),
                                      require_integer(cmd, "--m", m, context), cap));
    } else if (id == "cor4") {
      const auto cap = capacity.resolve(cmd, context);
      text = scalar_json(id, "radius",
                         bounds::relative_deviation_radius(
                             require_number(cmd, "--alpha", alpha, context),
                             require_integer(cmd, "--m", m, context), cap,
                             require_number(cmd, "--delta", delta, context)));
    } else if (id == "cor5") {
      const auto cap = capacity.resolve(cmd, context);
      text = scalar_json(id, "bound",
                         bounds::solved_bound(require_number(cmd, "--rate", rate, context),
                                              require_integer(cmd, "--m", m, context), cap,
                                              require_number(cmd, "--delta", delta, context)));
    } else if (id == "thm5") {
      const auto cap = capacity.resolve(cmd, context);
      text = probability_json(
          id, bounds::interpolated_rhs(require_number(cmd, "--nu", nu, context),
                                       require_number(cmd, "--epsilon", epsilon, context),
                                       require_integer(cmd, "--m", m, context), cap));
    } else if (id == "cor6") {
      const auto cap = capacity.resolve(cmd, context);
      text = probability_json(
          id, bounds::linear_excess_rhs(require_number(cmd, "--v", v, context),
                                        require_number(cmd, "--epsilon", epsilon, context),
                                        require_integer(cmd, "--m", m, context), cap));
    } else if (id == "cor7") {
      const auto cap = capacity.resolve(cmd, context);
      text = probability_json(
          id, bounds::consistent_excess_rhs(require_number(cmd, "--epsilon", epsilon, context),
                                            require_integer(cmd, "--m", m, context), cap));
    } else if (id == "cor15") {
      const auto cap = capacity.resolve(cmd, context);
      text = probability_json(
          id, bounds::moment_scaled_rhs(require_number(cmd, "--epsilon", epsilon, context),
                                        require_integer(cmd, "--m", m, context), cap));
    } else if (id == "gamma" || id == "cor10") {
      double a = 2.0;
      if (id == "gamma") {
        a = require_number(cmd, "--alpha", alpha, context);
      } else if (cmd->count("--alpha") && alpha != 2.0) {
        throw UsageError("bound --id cor10 fixes alpha = 2");
      }
      const double eps = require_number(cmd, "--epsilon", epsilon, context);
      report_io::JsonWriter w;
      w.begin_object();
      w.key("id").value(id);
      w.key("factor").value(bounds::gamma_factor(a, eps, tau));
      w.key("precondition_ok").value(bounds::gamma_precondition(a, eps, tau));
      w.end_object();
      text = w.take();
    } else if (id == "kappa") {
      text = scalar_json(id, "factor", bounds::kappa_factor(tau));
    } else if (id == "psi") {
      text = scalar_json(id, "factor",
                         bounds::psi_factor(require_number(cmd, "--alpha", alpha, context)));
    } else if (id == "lambda") {
      text = scalar_json(id, "factor",
                         bounds::lambda_factor(require_number(cmd, "--alpha", alpha, context),
                                               tau));
    } else if (id == "cor11") {
      const auto cap = capacity.resolve(cmd, context);
      text = scalar_json(id, "bound",
                         bounds::unbounded_bound_alpha2(
                             require_number(cmd, "--moment2", moment2, context), cap,
                             require_integer(cmd, "--m", m, context),
                             require_number(cmd, "--delta", delta, context)));
    } else if (id == "cor11kappa") {
      const auto cap = capacity.resolve(cmd, context);
      text = scalar_json(id, "bound",
                         bounds::unbounded_bound_alpha2_kappa(
                             require_number(cmd, "--moment2", moment2, context),
                             require_number(cmd, "--tau", tau, context), cap,
                             require_integer(cmd, "--m", m, context),
                             require_number(cmd, "--delta", delta, context)));
    } else if (id == "cor16") {
      text = scalar_json(id, "bound",
                         bounds::unbounded_bound_large_alpha(
                             require_number(cmd, "--moment", moment, context),
                             require_number(cmd, "--alpha", alpha, context),
                             require_integer(cmd, "--d", d, context),
                             require_integer(cmd, "--m", m, context),
                             require_number(cmd, "--delta", delta, context)));
    } else if (id == "sauer") {
      const auto dim = require_integer(cmd, "--d", d, context);
      const auto size = require_integer(cmd, "--n", n, context);
      report_io::JsonWriter w;
      w.begin_object();
      w.key("id").value(id);
      w.key("growth_upper").value(bounds::sauer_growth_upper(dim, size));
      w.key("log_growth").value(bounds::sauer_log_growth(dim, size));
      w.end_object();
      text = w.take();
    } else {
      throw UsageError("bound: unknown id '" + id +
                       "'; expected one of thm3, cor4, cor5, thm5, cor6, cor7, cor9, sym, "
                       "gamma, cor10, kappa, cor11, cor11kappa, psi, lambda, cor15, cor16, "
                       "sauer");
    }
    emit(text, out);
    return 0;
  }
};

struct ScanCommand {
  CLI::App* cmd = nullptr;
  std::int64_t m_max = 200;
  double resolution = 0.001;
  std::string tail = "geq";
  std::int64_t threshold_numerator = 1;
  bool serial = false;
  bool summary_only = false;
  std::string format = "csv";
  std::string out;

  void attach(CLI::App& app) {
    cmd = app.add_subcommand("binomial-scan",
                             "Scan binomial at-the-mean tail probabilities over the (m, p) grid");
    cmd->add_option("--m-max", m_max, "Largest trial count scanned (from 2)");
    cmd->add_option("--resolution", resolution, "p-grid step; must be 1/integer");
    cmd->add_option("--tail", tail, "geq (at or above the mean) or leq (at or below)");
    cmd->add_option("--threshold-numerator", threshold_numerator,
                    "Admit p beyond threshold/m (1 reproduces the certificate grid)");
    cmd->add_flag("--serial", serial, "Use the serial reference kernel");
    cmd->add_flag("--summary-only", summary_only, "Skip recording per-point rows");
    cmd->add_option("--format", format, "csv (grid rows) or json (summary)");
    cmd->add_option("--out", out, "Write the result to this path");
  }

  int run() const {
    binomial::ScanOptions options;
    options.max_trials = m_max;
    if (!(resolution > 0.0) || !std::isfinite(resolution)) {
      throw UsageError("binomial-scan: --resolution must be positive");
    }
    const double denominator = 1.0 / resolution;
    options.grid_denominator = std::llround(denominator);
    if (std::abs(denominator - static_cast<double>(options.grid_denominator)) > 1e-6) {
      throw UsageError("binomial-scan: --resolution must be the reciprocal of an integer");
    }
    options.threshold_numerator = threshold_numerator;
    options.record_points = !summary_only;
    options.parallel = !serial;
    binomial::Tail which;
    if (tail == "geq") {
      which = binomial::Tail::geq_mean;
    } else if (tail == "leq") {
      which = binomial::Tail::leq_mean;
    } else {
      throw UsageError("binomial-scan: --tail must be geq or leq");
    }
    const auto result = serial ? binomial::scan_tail_minimum_serial(which, options)
                               : binomial::scan_tail_minimum(which, options);
    if (format == "csv") {
      if (summary_only) {
        throw UsageError("binomial-scan: --summary-only output needs --format json");
      }
      emit(report_io::scan_csv(result), out);
    } else if (format == "json") {
      emit(report_io::scan_json(result), out);
    } else {
      throw UsageError("binomial-scan: --format must be csv or json");
    }
    return 0;
  }
};

struct CapacityCommand {
  CLI::App* cmd = nullptr;
  std::string table;
  std::string loss_table;
  bool shatter = false;
  std::int64_t growth_m = 0;
  bool vc = false;
  bool pdim = false;
  std::vector<std::int64_t> points;
  std::int64_t max_domain = 0;
  std::int64_t max_subset = 0;
  bool serial = false;
  std::string out;

  void attach(CLI::App& app) {
    cmd = app.add_subcommand("capacity",
                             "Exact combinatorial capacities of explicit hypothesis tables");
    cmd->add_option("--table", table, "CSV of 0/1 rows, one hypothesis per line");
    cmd->add_option("--loss-table", loss_table, "CSV of real-valued loss rows");
    cmd->add_flag("--shatter", shatter, "Count distinct patterns on --points (default: all)");
    cmd->add_option("--growth", growth_m, "Growth function at this subset size");
    cmd->add_flag("--vc", vc, "VC dimension");
    cmd->add_flag("--pdim", pdim, "Pseudo-dimension of --loss-table");
    cmd->add_option("--points", points, "Point indices for --shatter")->delimiter(',');
    cmd->add_option("--max-domain", max_domain, "Budget: largest allowed domain");
    cmd->add_option("--max-subset", max_subset, "Budget: largest allowed subset size");
    cmd->add_flag("--serial", serial, "Use the serial growth kernel");
    cmd->add_option("--out", out, "Write the JSON result to this path");
  }

  int run() const {
    const int modes = (cmd->count("--shatter") != 0) + (cmd->count("--growth") != 0) +
                      (cmd->count("--vc") != 0) + (cmd->count("--pdim") != 0);
    if (modes != 1) {
      throw UsageError("capacity requires exactly one of --shatter, --growth, --vc, --pdim");
    }
    capacity::EnumerationBudget budget;
    if (cmd->count("--max-domain")) budget.max_domain = max_domain;
    if (cmd->count("--max-subset")) budget.max_subset = max_subset;

    std::string mode;
    std::int64_t value = 0;
    if (pdim) {
      if (loss_table.empty()) {
        throw UsageError("capacity --pdim requires --loss-table");
      }
      const auto losses = capacity::LossTable::load_csv(loss_table);
      value = capacity::pseudo_dimension(losses, budget);
      mode = "pdim";
    } else {
      if (table.empty()) {
        throw UsageError("capacity requires --table");
      }
      const auto rows = capacity::HypothesisTable::load_csv(table);
      if (shatter) {
        std::vector<std::int64_t> where = points;
        if (where.empty()) {
          where.resize(static_cast<std::size_t>(rows.domain_size()));
          for (std::size_t i = 0; i < where.size(); ++i) {
            where[i] = static_cast<std::int64_t>(i);
          }
        }
        value = capacity::shatter_count(rows, where);
        mode = "shatter";
      } else if (cmd->count("--growth")) {
        value = serial ? capacity::growth_function_serial(rows, growth_m, budget)
                       : capacity::growth_function(rows, growth_m, budget);
        mode = "growth";
      } else {
        value = capacity::vc_dimension(rows, budget);
        mode = "vc";
      }
    }
    report_io::JsonWriter w;
    w.begin_object();
    w.key("mode").value(mode);
    w.key("value").value(value);
    w.end_object();
    emit(w.take(), out);
    return 0;
  }
};

struct AnalyticCommand {
  CLI::App* cmd = nullptr;
  std::string mode;
  double alpha = 2.0;
  double eta = 0.5;
  std::string variant = "half";
  std::int64_t samples = 200000;
  std::uint64_t seed = 1;
  bool serial = false;
  double beta = 0.75;
  double eps_min = 1e-6;
  double eps_max = 1.0;
  std::int64_t count = 200;
  double shape = 2.5;
  double scale = 1.0;
  std::string out;

  void attach(CLI::App& app) {
    cmd = app.add_subcommand("analytic",
                             "Deviation-ratio probes, envelope comparisons, tail quadrature");
    cmd->add_option("--mode", mode, "probe | approx | moment | sqrt-tail")->required();
    cmd->add_option("--alpha", alpha, "Ratio exponent / moment order");
    cmd->add_option("--eta", eta, "Deviation level for the probe");
    cmd->add_option("--variant", variant, "Denominator pooling: half or plain");
    cmd->add_option("--samples", samples, "Probe sample count");
    cmd->add_option("--seed", seed, "Probe master seed");
    cmd->add_flag("--serial", serial, "Use the serial probe kernel");
    cmd->add_option("--beta", beta, "Power envelope exponent");
    cmd->add_option("--eps-min", eps_min, "Smallest epsilon in the log grid");
    cmd->add_option("--eps-max", eps_max, "Largest epsilon in the log grid");
    cmd->add_option("--count", count, "Grid size");
    cmd->add_option("--shape", shape, "Pareto tail exponent");
    cmd->add_option("--scale", scale, "Pareto scale");
    cmd->add_option("--out", out, "Write the result to this path");
  }

  static std::vector<double> log_grid(double lo, double hi, std::int64_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) {
      throw UsageError("analytic: grid needs 0 < eps-min < eps-max and count >= 2");
    }
    std::vector<double> grid(static_cast<std::size_t>(n));
    const double llo = std::log10(lo);
    const double lhi = std::log10(hi);
    for (std::int64_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(n - 1);
      grid[static_cast<std::size_t>(i)] = std::pow(10.0, llo + t * (lhi - llo));
    }
    grid.back() = hi;  // pin the endpoint against rounding
    return grid;
  }

  int run() const {
    if (mode == "probe") {
      analytic::RatioVariant which;
      if (variant == "half") {
        which = analytic::RatioVariant::half_sum;
      } else if (variant == "plain") {
        which = analytic::RatioVariant::plain_sum;
      } else {
        throw UsageError("analytic: --variant must be half or plain");
      }
      const auto result = serial
                              ? analytic::monotonicity_probe_serial(alpha, eta, which, samples,
                                                                    seed)
                              : analytic::monotonicity_probe(alpha, eta, which, samples, seed);
      report_io::JsonWriter w;
      w.begin_object();
      w.key("samples").value(result.samples);
      w.key("violations").value(result.violations);
      w.key("min_margin").value(result.min_margin);
      w.end_object();
      emit(w.take(), out);
      return result.violations == 0 ? 0 : 1;
    }
    if (mode == "approx") {
      emit(report_io::approx_csv(log_grid(eps_min, eps_max, count), beta), out);
      return 0;
    }
    if (mode == "moment") {
      const analytic::Pareto model{shape, scale};
      analytic::QuadratureOptions options;
      options.scale_hint = scale;
      const double quadrature = analytic::tail_integral_moment(
          [&model](double t) { return model.tail(t); }, alpha, options);
      const double closed = model.moment(alpha);
      report_io::JsonWriter w;
      w.begin_object();
      w.key("quadrature").value(quadrature);
      w.key("closed_form").value(closed);
      w.key("abs_error").value(std::abs(quadrature - closed));
      w.end_object();
      emit(w.take(), out);
      return 0;
    }
    if (mode == "sqrt-tail") {
      const analytic::Pareto model{shape, scale};
      analytic::QuadratureOptions options;
      options.scale_hint = scale;
      const double integral = analytic::tail_integral_moment(
          [&model](double t) { return std::sqrt(model.tail(t)); }, 1.0, options);
      const double closed = model.sqrt_tail_integral();
      const double bound = bounds::psi_factor(alpha) * std::pow(model.moment(alpha), 1.0 / alpha);
      report_io::JsonWriter w;
      w.begin_object();
      w.key("integral_quadrature").value(integral);
      w.key("integral_closed_form").value(closed);
      w.key("moment_root_bound").value(bound);
      w.key("slack").value(bound - integral);
      w.end_object();
      emit(w.take(), out);
      return bound >= integral ? 0 : 1;
    }
    throw UsageError("analytic: --mode must be probe, approx, moment, or sqrt-tail");
  }
};

struct ExperimentCommand {
  CLI::App* cmd = nullptr;
  std::string config_path;
  std::string out;
  std::string csv;
  std::string trace;
  bool serial = false;
  bool check_symmetrization = false;

  void attach(CLI::App& app) {
    cmd = app.add_subcommand("experiment",
                             "Monte Carlo verification of a bound on a configured scenario");
    cmd->add_option("--config", config_path, "JSON experiment configuration")->required();
    cmd->add_option("--out", out, "Write the JSON report to this path");
    cmd->add_option("--csv", csv, "Also write the CSV summary to this path");
    cmd->add_option("--trace", trace, "Stream per-trial statistics to this JSON-lines path");
    cmd->add_flag("--serial", serial, "Use the serial trial kernel");
    cmd->add_flag("--check-symmetrization", check_symmetrization,
                  "Run the factor-4 symmetrization comparison instead of a bound report");
  }

  int run() const {
    const auto config = report_io::load_config(resolve_out_path_free(config_path));
    if (check_symmetrization) {
      const auto reports = experiment::symmetrization_ratio_check(config);
      emit(report_io::symmetrization_json(reports), out);
      for (const auto& rep : reports) {
        for (const auto& row : rep.rows) {
          if (!row.factor_ok) return 1;
        }
      }
      return 0;
    }
    if (!trace.empty()) {
      const auto stats = serial
                             ? experiment::trial_statistics_serial(config, 0, config.trials)
                             : experiment::trial_statistics(config, 0, config.trials);
      std::string lines;
      for (std::size_t i = 0; i < stats.size(); ++i) {
        report_io::JsonWriter w;
        w.begin_object();
        w.key("trial").value(static_cast<std::int64_t>(i));
        w.key("statistic").value(stats[i]);
        w.end_object();
        lines += w.take();
        lines += '\n';
      }
      report_io::write_text_file(resolve_out_path(trace), lines);
    }
    const auto report = serial ? experiment::run_experiment_serial(config)
                               : experiment::run_experiment(config);
    emit(report_io::trial_report_json(report), out);
    if (!csv.empty()) {
      report_io::write_text_file(resolve_out_path(csv), report_io::trial_report_csv(report));
    }
    return report.any_fail() ? 1 : 0;
  }

  // Config paths are inputs, not outputs; read them as given.
  static std::string resolve_out_path_free(const std::string& path) { return path; }
};

struct FiguresCommand {
  CLI::App* cmd = nullptr;
  std::string out_dir;
  std::int64_t m_max = 14;
  double resolution = 0.001;

  void attach(CLI::App& app) {
    cmd = app.add_subcommand("figures", "Emit the standard figure-data CSV files");
    cmd->add_option("--out-dir", out_dir, "Output directory (default: RELDEV_OUT_DIR or .)");
    cmd->add_option("--m-max", m_max, "Largest trial count in the scan figures");
    cmd->add_option("--resolution", resolution, "p-grid step for the scan figures");
  }

  int run() const {
    std::filesystem::path dir;
    if (!out_dir.empty()) {
      dir = out_dir;
    } else if (const char* env = std::getenv("RELDEV_OUT_DIR"); env != nullptr && *env != '\0') {
      dir = env;
    } else {
      dir = ".";
    }

    binomial::ScanOptions options;
    options.max_trials = m_max;
    options.grid_denominator = std::llround(1.0 / resolution);
    if (std::abs(1.0 / resolution - static_cast<double>(options.grid_denominator)) > 1e-6) {
      throw UsageError("figures: --resolution must be the reciprocal of an integer");
    }

    std::vector<std::string> written;
    options.threshold_numerator = 1;
    const auto left = binomial::scan_tail_minimum(binomial::Tail::geq_mean, options);
    const auto left_path = (dir / "figure1_left.csv").string();
    report_io::write_text_file(left_path, report_io::scan_csv(left));
    written.push_back(left_path);

    options.threshold_numerator = 2;
    const auto right = binomial::scan_tail_minimum(binomial::Tail::geq_mean, options);
    const auto right_path = (dir / "figure1_right.csv").string();
    report_io::write_text_file(right_path, report_io::scan_csv(right));
    written.push_back(right_path);

    const auto grid = AnalyticCommand::log_grid(1e-6, 1.0, 200);
    const auto approx_path = (dir / "figure2.csv").string();
    report_io::write_text_file(approx_path, report_io::approx_csv(grid, 0.75));
    written.push_back(approx_path);

    report_io::JsonWriter w;
    w.begin_object();
    w.key("written").begin_array();
    for (const auto& path : written) w.value(path);
    w.end_array();
    w.end_object();
    emit(w.take(), "");
    return 0;
  }
};

int error_exit(const char* kind, const std::exception& e) {
  report_io::JsonWriter w;
  w.begin_object();
  w.key("error").value(kind);
  w.key("message").value(std::string(e.what()));
  w.end_object();
  std::cerr << w.take() << "\n";
  return 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Relative-deviation bound calculator and Monte Carlo verifier"};
  app.require_subcommand(1);

  BoundCommand bound;
  ScanCommand scan;
  CapacityCommand capacity_cmd;
  AnalyticCommand analytic_cmd;
  ExperimentCommand experiment_cmd;
  FiguresCommand figures;
  bound.attach(app);
  scan.attach(app);
  capacity_cmd.attach(app);
  analytic_cmd.attach(app);
  experiment_cmd.attach(app);
  figures.attach(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (bound.cmd->parsed()) return bound.run();
    if (scan.cmd->parsed()) return scan.run();
    if (capacity_cmd.cmd->parsed()) return capacity_cmd.run();
    if (analytic_cmd.cmd->parsed()) return analytic_cmd.run();
    if (experiment_cmd.cmd->parsed()) return experiment_cmd.run();
    if (figures.cmd->parsed()) return figures.run();
    std::cerr << app.help() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    return error_exit("domain", e);
  } catch (const ConfigError& e) {
    return error_exit("config", e);
  } catch (const BudgetError& e) {
    return error_exit("budget", e);
  } catch (const DivergenceError& e) {
    return error_exit("divergence", e);
  } catch (const IoError& e) {
    return error_exit("io", e);
  } catch (const std::exception& e) {
    return error_exit("internal", e);
  }
}

}  // namespace reldev::cli
