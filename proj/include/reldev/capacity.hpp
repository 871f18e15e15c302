#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace reldev::capacity {

// Work caps for the exhaustive enumerations below. Exceeding one raises
// BudgetError rather than silently truncating the search.
struct EnumerationBudget {
  std::int64_t max_domain = 24;  // largest domain a full enumeration may range over
  std::int64_t max_subset = 20;  // largest subset size enumerated
};

// Finite binary hypothesis class given by explicit labels, one row per
// hypothesis and one column per domain point. Duplicate rows collapse on
// construction (first occurrence kept), so size() counts distinct behaviors.
class HypothesisTable {
 public:
  HypothesisTable(std::int64_t domain_size, std::vector<std::vector<std::uint8_t>> rows);

  // One row per line, comma-separated 0/1 entries; blank lines and lines
  // starting with '#' are ignored. All rows must have equal width.
  static HypothesisTable from_csv(std::istream& in);
  static HypothesisTable load_csv(const std::string& path);

  std::int64_t domain_size() const { return domain_size_; }
  std::int64_t size() const { return static_cast<std::int64_t>(rows_.size()); }
  std::uint8_t label(std::int64_t hypothesis, std::int64_t point) const;
  const std::vector<std::vector<std::uint8_t>>& rows() const { return rows_; }

 private:
  std::int64_t domain_size_;
  std::vector<std::vector<std::uint8_t>> rows_;
};

// Distinct label patterns the class realizes on the given points (points may
// repeat; repeats never add patterns). Empty point list counts one pattern.
std::int64_t shatter_count(const HypothesisTable& table,
                           const std::vector<std::int64_t>& points);

// Maximum of shatter_count over all subsets of min(m, domain_size) distinct
// points. The parallel kernel enumerates subsets by combinadic rank; the
// serial reference walks them lexicographically and may stop early once the
// theoretical maximum is reached. Both return the same value.
std::int64_t growth_function(const HypothesisTable& table, std::int64_t m,
                             const EnumerationBudget& budget = {});
std::int64_t growth_function_serial(const HypothesisTable& table, std::int64_t m,
                                    const EnumerationBudget& budget = {});

// Largest subset size on which the class realizes all 2^k patterns.
std::int64_t vc_dimension(const HypothesisTable& table, const EnumerationBudget& budget = {});

// Real-valued loss table, one row per hypothesis, one column per point.
class LossTable {
 public:
  LossTable(std::int64_t domain_size, std::vector<std::vector<double>> rows);
  static LossTable from_csv(std::istream& in);
  static LossTable load_csv(const std::string& path);

  std::int64_t domain_size() const { return domain_size_; }
  std::int64_t size() const { return static_cast<std::int64_t>(rows_.size()); }
  double value(std::int64_t hypothesis, std::int64_t point) const;
  const std::vector<std::vector<double>>& rows() const { return rows_; }

 private:
  std::int64_t domain_size_;
  std::vector<std::vector<double>> rows_;
};

// Indicator class over the same points with one row per (hypothesis,
// threshold) pair: entry = 1 when loss exceeds the threshold. Duplicate rows
// collapse through HypothesisTable construction.
HypothesisTable threshold_class(const LossTable& losses, const std::vector<double>& thresholds);

// Global threshold grid that realizes every pattern any single row can
// produce: midpoints between consecutive distinct values within each row,
// plus one sentinel below and one above everything.
std::vector<double> row_threshold_grid(const LossTable& losses);

// VC dimension of the one-sided level sets over the product domain
// (point, threshold). Thresholds come either from the explicit list (applied
// at every point) or, in the first overload, per point from midpoints of the
// distinct values the class takes there.
std::int64_t pseudo_dimension(const LossTable& losses, const EnumerationBudget& budget = {});
std::int64_t pseudo_dimension(const LossTable& losses, const std::vector<double>& thresholds,
                              const EnumerationBudget& budget = {});

}  // namespace reldev::capacity
