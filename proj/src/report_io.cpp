#include "reldev/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"
#include "reldev/errors.hpp"

namespace reldev::report_io {

using nlohmann::json;

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

JsonWriter& JsonWriter::begin_object() {
  separate();
  out_ += '{';
  needs_comma_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  needs_comma_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separate();
  out_ += '[';
  needs_comma_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  needs_comma_.pop_back();
  return *this;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

JsonWriter& JsonWriter::key(const std::string& name) {
  if (!needs_comma_.empty() && needs_comma_.back()) out_ += ',';
  if (!needs_comma_.empty()) needs_comma_.back() = true;
  append_escaped(out_, name);
  out_ += ':';
  pending_key_ = true;
  return *this;
}

void JsonWriter::separate() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!needs_comma_.empty()) {
    if (needs_comma_.back()) out_ += ',';
    needs_comma_.back() = true;
  }
}

JsonWriter& JsonWriter::value(double v) {
  separate();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::int64_t v) {
  separate();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  separate();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separate();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  separate();
  append_escaped(out_, v);
  return *this;
}

JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }

std::string JsonWriter::take() { return std::move(out_); }

namespace {

void check_keys(const json& node, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& item : node.items()) {
    bool ok = false;
    for (const char* name : allowed) {
      if (item.key() == name) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ConfigError("config: unknown key '" + item.key() + "' in " + where);
    }
  }
}

const json& require_key(const json& node, const char* key, const std::string& where) {
  auto it = node.find(key);
  if (it == node.end()) {
    throw ConfigError("config: missing key '" + std::string(key) + "' in " + where);
  }
  return *it;
}

double as_number(const json& node, const std::string& what) {
  if (!node.is_number()) {
    throw ConfigError("config: '" + what + "' must be a number");
  }
  return node.get<double>();
}

std::int64_t as_integer(const json& node, const std::string& what) {
  if (!node.is_number_integer() && !node.is_number_unsigned()) {
    throw ConfigError("config: '" + what + "' must be an integer");
  }
  return node.get<std::int64_t>();
}

std::uint64_t as_unsigned(const json& node, const std::string& what) {
  if (node.is_number_unsigned()) return node.get<std::uint64_t>();
  if (node.is_number_integer()) {
    const auto v = node.get<std::int64_t>();
    if (v < 0) throw ConfigError("config: '" + what + "' must be nonnegative");
    return static_cast<std::uint64_t>(v);
  }
  throw ConfigError("config: '" + what + "' must be an integer");
}

std::string as_string(const json& node, const std::string& what) {
  if (!node.is_string()) {
    throw ConfigError("config: '" + what + "' must be a string");
  }
  return node.get<std::string>();
}

std::vector<double> as_number_array(const json& node, const std::string& what) {
  if (!node.is_array()) {
    throw ConfigError("config: '" + what + "' must be an array of numbers");
  }
  std::vector<double> out;
  out.reserve(node.size());
  for (const auto& v : node) out.push_back(as_number(v, what + " entry"));
  return out;
}

void cross_check(const std::vector<double>& provided, const std::vector<double>& computed,
                 const char* field) {
  if (provided.size() != computed.size()) {
    throw ConfigError("config: '" + std::string(field) + "' must list one value per row (got " +
                      std::to_string(provided.size()) + ", expected " +
                      std::to_string(computed.size()) + ")");
  }
  for (std::size_t i = 0; i < provided.size(); ++i) {
    const double tol = 1e-12 * std::max(1.0, std::abs(computed[i]));
    if (!(std::abs(provided[i] - computed[i]) <= tol)) {
      throw ConfigError("config: '" + std::string(field) + "[" + std::to_string(i) + "]' = " +
                        format_double(provided[i]) + " disagrees with the computed value " +
                        format_double(computed[i]));
    }
  }
}

struct ParsedScenario {
  scenario::Scenario model;
  std::string description;
  std::string builtin;
};

ParsedScenario scenario_from_json(const json& node) {
  if (!node.is_object()) {
    throw ConfigError("config: 'scenario' must be an object");
  }
  ParsedScenario out;
  const std::string kind = as_string(require_key(node, "kind", "scenario"), "scenario.kind");
  if (auto it = node.find("description"); it != node.end()) {
    out.description = as_string(*it, "scenario.description");
  }

  if (kind == "builtin") {
    check_keys(node, {"kind", "name", "description"}, "the builtin scenario");
    const std::string name =
        as_string(require_key(node, "name", "scenario"), "scenario.name");
    if (name == "threshold16") {
      out.model = scenario::threshold_binary_scenario();
    } else if (name == "single_half") {
      out.model = scenario::single_hypothesis_half_scenario();
    } else if (name == "pareto_scales") {
      out.model = scenario::pareto_scale_scenario();
    } else if (name == "importance_weighting") {
      out.model = scenario::importance_weighting_scenario();
    } else {
      throw ConfigError("config: unknown builtin scenario '" + name + "'");
    }
    out.builtin = name;
    return out;
  }

  if (kind == "binary") {
    check_keys(node, {"kind", "point_probabilities", "error_rows", "true_risks", "description"},
               "the binary scenario");
    const auto probs = as_number_array(require_key(node, "point_probabilities", "scenario"),
                                       "scenario.point_probabilities");
    const json& rows_node = require_key(node, "error_rows", "scenario");
    if (!rows_node.is_array() || rows_node.empty()) {
      throw ConfigError("config: 'scenario.error_rows' must be a nonempty array of rows");
    }
    std::vector<std::vector<std::uint8_t>> rows;
    rows.reserve(rows_node.size());
    for (const auto& row_node : rows_node) {
      if (!row_node.is_array()) {
        throw ConfigError("config: 'scenario.error_rows' rows must be arrays");
      }
      std::vector<std::uint8_t> row;
      row.reserve(row_node.size());
      for (const auto& cell : row_node) {
        const auto v = as_integer(cell, "scenario.error_rows entry");
        if (v != 0 && v != 1) {
          throw ConfigError("config: 'scenario.error_rows' entries must be 0 or 1");
        }
        row.push_back(static_cast<std::uint8_t>(v));
      }
      rows.push_back(std::move(row));
    }
    // Risk cross-check runs against the rows as written, before the model
    // deduplicates them.
    if (auto it = node.find("true_risks"); it != node.end()) {
      const auto provided = as_number_array(*it, "scenario.true_risks");
      std::vector<double> computed;
      computed.reserve(rows.size());
      for (const auto& row : rows) {
        if (row.size() != probs.size()) {
          throw ConfigError("config: 'scenario.error_rows' rows must match the support size");
        }
        double risk = 0.0;
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (row[i]) risk += probs[i];
        }
        computed.push_back(risk);
      }
      cross_check(provided, computed, "scenario.true_risks");
    }
    out.model = scenario::BinaryScenario::build(probs, std::move(rows));
    return out;
  }

  if (kind == "pareto") {
    check_keys(node, {"kind", "shape", "scale", "hypothesis_scales", "true_means", "description"},
               "the pareto scenario");
    scenario::ParetoScenario s;
    s.base.shape = as_number(require_key(node, "shape", "scenario"), "scenario.shape");
    s.base.scale = as_number(require_key(node, "scale", "scenario"), "scenario.scale");
    s.hypothesis_scales = as_number_array(require_key(node, "hypothesis_scales", "scenario"),
                                          "scenario.hypothesis_scales");
    s.validate();
    if (auto it = node.find("true_means"); it != node.end()) {
      const auto provided = as_number_array(*it, "scenario.true_means");
      std::vector<double> computed;
      computed.reserve(s.hypothesis_scales.size());
      for (std::int64_t h = 0; h < s.hypothesis_count(); ++h) {
        computed.push_back(s.true_mean(h));
      }
      cross_check(provided, computed, "scenario.true_means");
    }
    out.model = std::move(s);
    return out;
  }

  throw ConfigError("config: unknown scenario kind '" + kind +
                    "' (expected binary, pareto, or builtin)");
}

void scenario_to_writer(JsonWriter& w, const experiment::ExperimentConfig& config) {
  w.begin_object();
  if (!config.scenario_builtin.empty()) {
    w.key("kind").value("builtin");
    w.key("name").value(config.scenario_builtin);
    if (!config.scenario_description.empty()) {
      w.key("description").value(config.scenario_description);
    }
    w.end_object();
    return;
  }
  if (const auto* binary = std::get_if<scenario::BinaryScenario>(&config.model)) {
    w.key("kind").value("binary");
    if (!config.scenario_description.empty()) {
      w.key("description").value(config.scenario_description);
    }
    w.key("point_probabilities").begin_array();
    for (double p : binary->point_probabilities) w.value(p);
    w.end_array();
    w.key("error_rows").begin_array();
    for (const auto& row : binary->errors.rows()) {
      w.begin_array();
      for (auto cell : row) w.value(static_cast<std::int64_t>(cell));
      w.end_array();
    }
    w.end_array();
    w.key("true_risks").begin_array();
    for (double r : binary->true_risks) w.value(r);
    w.end_array();
    w.end_object();
    return;
  }
  const auto& pareto = std::get<scenario::ParetoScenario>(config.model);
  w.key("kind").value("pareto");
  if (!config.scenario_description.empty()) {
    w.key("description").value(config.scenario_description);
  }
  w.key("shape").value(pareto.base.shape);
  w.key("scale").value(pareto.base.scale);
  w.key("hypothesis_scales").begin_array();
  for (double c : pareto.hypothesis_scales) w.value(c);
  w.end_array();
  w.key("true_means").begin_array();
  for (std::int64_t h = 0; h < pareto.hypothesis_count(); ++h) w.value(pareto.true_mean(h));
  w.end_array();
  w.end_object();
}

}  // namespace

experiment::ExperimentConfig config_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config: document root must be an object");
  }
  check_keys(doc,
             {"description", "bound_id", "statistic", "scenario", "sample_size", "trials",
              "alpha", "tau", "excess_factor", "epsilon_grid", "confidence", "master_seed"},
             "the config");

  experiment::ExperimentConfig config;
  if (auto it = doc.find("description"); it != doc.end()) {
    config.description = as_string(*it, "description");
  }
  config.bound_id = as_string(require_key(doc, "bound_id", "the config"), "bound_id");
  config.statistic = experiment::statistic_from_name(
      as_string(require_key(doc, "statistic", "the config"), "statistic"));
  ParsedScenario parsed = scenario_from_json(require_key(doc, "scenario", "the config"));
  config.model = std::move(parsed.model);
  config.scenario_description = std::move(parsed.description);
  config.scenario_builtin = std::move(parsed.builtin);
  config.sample_size =
      as_integer(require_key(doc, "sample_size", "the config"), "sample_size");
  config.trials = as_integer(require_key(doc, "trials", "the config"), "trials");
  if (auto it = doc.find("alpha"); it != doc.end()) config.alpha = as_number(*it, "alpha");
  if (auto it = doc.find("tau"); it != doc.end()) config.tau = as_number(*it, "tau");
  if (auto it = doc.find("excess_factor"); it != doc.end()) {
    config.excess_factor = as_number(*it, "excess_factor");
  }
  config.epsilon_grid = as_number_array(require_key(doc, "epsilon_grid", "the config"),
                                        "epsilon_grid");
  if (auto it = doc.find("confidence"); it != doc.end()) {
    config.confidence = as_number(*it, "confidence");
  }
  if (auto it = doc.find("master_seed"); it != doc.end()) {
    config.master_seed = as_unsigned(*it, "master_seed");
  }
  config.validate();
  return config;
}

experiment::ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("io: cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return config_from_json_text(buffer.str());
}

std::string config_to_json_text(const experiment::ExperimentConfig& config) {
  JsonWriter w;
  w.begin_object();
  if (!config.description.empty()) w.key("description").value(config.description);
  w.key("bound_id").value(config.bound_id);
  w.key("statistic").value(experiment::statistic_name(config.statistic));
  w.key("scenario");
  scenario_to_writer(w, config);
  w.key("sample_size").value(config.sample_size);
  w.key("trials").value(config.trials);
  w.key("alpha").value(config.alpha);
  w.key("tau").value(config.tau);
  w.key("excess_factor").value(config.excess_factor);
  w.key("epsilon_grid").begin_array();
  for (double eps : config.epsilon_grid) w.value(eps);
  w.end_array();
  w.key("confidence").value(config.confidence);
  w.key("master_seed").value(config.master_seed);
  w.end_object();
  return w.take();
}

std::string trial_report_json(const experiment::TrialReport& report) {
  JsonWriter w;
  w.begin_object();
  w.key("bound_id").value(report.bound_id);
  w.key("statistic").value(experiment::statistic_name(report.statistic));
  w.key("scenario_kind").value(report.scenario_kind);
  w.key("sample_size").value(report.sample_size);
  w.key("trials").value(report.trials);
  w.key("alpha").value(report.alpha);
  w.key("tau").value(report.tau);
  w.key("excess_factor").value(report.excess_factor);
  w.key("confidence").value(report.confidence);
  w.key("master_seed").value(report.master_seed);
  w.key("capacity").value(report.capacity_value);
  w.key("rows").begin_array();
  for (const auto& row : report.rows) {
    w.begin_object();
    w.key("epsilon").value(row.epsilon);
    w.key("threshold").value(row.threshold);
    w.key("exceedances").value(row.exceedances);
    w.key("trials").value(row.trials);
    w.key("frequency").value(row.frequency);
    w.key("frequency_upper").value(row.frequency_upper);
    w.key("rhs").value(row.rhs);
    w.key("vacuous").value(row.vacuous);
    w.key("verdict").value(row.verdict);
    w.end_object();
  }
  w.end_array();
  w.key("warnings").begin_array();
  for (const auto& warning : report.warnings) w.value(warning);
  w.end_array();
  w.end_object();
  return w.take();
}

std::string trial_report_csv(const experiment::TrialReport& report) {
  std::string out = "epsilon,frequency,ci_upper,rhs,verdict\n";
  for (const auto& row : report.rows) {
    out += format_double(row.epsilon);
    out += ',';
    out += format_double(row.frequency);
    out += ',';
    out += format_double(row.frequency_upper);
    out += ',';
    out += format_double(row.rhs);
    out += ',';
    out += row.verdict;
    out += '\n';
  }
  return out;
}

std::string scan_json(const binomial::ScanResult& result) {
  JsonWriter w;
  w.begin_object();
  w.key("min_tail").value(result.min_tail);
  w.key("argmin_trials").value(result.argmin_trials);
  w.key("argmin_p").value(result.argmin_p);
  w.key("all_above_quarter").value(result.all_above_quarter);
  w.key("skipped_trials").begin_array();
  for (auto m : result.skipped_trials) w.value(m);
  w.end_array();
  w.key("points_recorded").value(static_cast<std::int64_t>(result.points.size()));
  w.end_object();
  return w.take();
}

std::string scan_csv(const binomial::ScanResult& result) {
  std::string out = "m,p,tail_probability\n";
  for (const auto& point : result.points) {
    out += std::to_string(point.trials);
    out += ',';
    out += format_double(point.p);
    out += ',';
    out += format_double(point.tail);
    out += '\n';
  }
  return out;
}

std::string approx_csv(const std::vector<double>& epsilon_grid, double beta) {
  std::string out = "epsilon,lhs,rhs\n";
  for (double eps : epsilon_grid) {
    const auto check = analytic::sqrt_log_approx(eps, beta);
    out += format_double(eps);
    out += ',';
    out += format_double(check.lhs);
    out += ',';
    out += format_double(check.rhs);
    out += '\n';
  }
  return out;
}

std::string symmetrization_json(const std::vector<experiment::SymmetrizationReport>& reports) {
  JsonWriter w;
  w.begin_object();
  w.key("reports").begin_array();
  for (const auto& rep : reports) {
    w.begin_object();
    w.key("direction").value(rep.direction);
    w.key("sample_size").value(rep.sample_size);
    w.key("trials").value(rep.trials);
    w.key("alpha").value(rep.alpha);
    w.key("tau").value(rep.tau);
    w.key("confidence").value(rep.confidence);
    w.key("master_seed").value(rep.master_seed);
    w.key("rows").begin_array();
    for (const auto& row : rep.rows) {
      w.begin_object();
      w.key("epsilon").value(row.epsilon);
      w.key("regime_ok").value(row.regime_ok);
      w.key("one_sided_exceedances").value(row.one_sided_exceedances);
      w.key("symmetrized_exceedances").value(row.symmetrized_exceedances);
      w.key("lhs_one_sample").value(row.lhs_one_sample);
      w.key("lhs_one_sample_lower").value(row.lhs_one_sample_lower);
      w.key("lhs_one_sample_upper").value(row.lhs_one_sample_upper);
      w.key("lhs_symmetrized").value(row.lhs_symmetrized);
      w.key("lhs_symmetrized_lower").value(row.lhs_symmetrized_lower);
      w.key("lhs_symmetrized_upper").value(row.lhs_symmetrized_upper);
      w.key("outcome").value(row.outcome);
      w.key("factor_ok").value(row.factor_ok);
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.take();
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(target.parent_path(), ec);
    if (ec) {
      throw IoError("io: cannot create directory '" + target.parent_path().string() + "': " +
                    ec.message());
    }
  }
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("io: cannot open '" + path + "' for writing");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw IoError("io: write failed for '" + path + "'");
  }
}

}  // namespace reldev::report_io
