#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reldev/analytic.hpp"
#include "reldev/binomial.hpp"
#include "reldev/experiment.hpp"

namespace reldev::report_io {

// Minimal JSON emitter with a fixed key order and doubles printed at 17
// significant digits, so identical inputs always serialize to identical
// bytes. Parsing stays on the vendored library; only emission is hand-rolled.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& name);
  JsonWriter& value(double v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v);
  std::string take();

 private:
  void separate();
  std::string out_;
  std::vector<bool> needs_comma_;
  bool pending_key_ = false;
};

// Doubles formatted exactly as the writer prints them (17 significant digits).
std::string format_double(double v);

// Strict config (de)serialization. Unknown keys are rejected; a canonical
// document (all keys explicit) round-trips byte-for-byte through
// config_to_json_text after config_from_json_text.
experiment::ExperimentConfig config_from_json_text(const std::string& text);
experiment::ExperimentConfig load_config(const std::string& path);
std::string config_to_json_text(const experiment::ExperimentConfig& config);

// Report serialization. CSV column orders are part of the tool's contract:
//   trial report: epsilon,frequency,ci_upper,rhs,verdict
//   scan:         m,p,tail_probability
//   approx:       epsilon,lhs,rhs
std::string trial_report_json(const experiment::TrialReport& report);
std::string trial_report_csv(const experiment::TrialReport& report);
std::string scan_json(const binomial::ScanResult& result);
std::string scan_csv(const binomial::ScanResult& result);
std::string approx_csv(const std::vector<double>& epsilon_grid, double beta);
std::string symmetrization_json(const std::vector<experiment::SymmetrizationReport>& reports);

// Writes text to path, creating parent directories as needed.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace reldev::report_io
