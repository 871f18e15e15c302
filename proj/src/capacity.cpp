#include "reldev/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "reldev/errors.hpp"

namespace reldev::capacity {

namespace {

constexpr std::int64_t kCombinationCap = std::int64_t{1} << 40;

std::int64_t saturating_add(std::int64_t a, std::int64_t b) {
  if (a > std::numeric_limits<std::int64_t>::max() - b) {
    return std::numeric_limits<std::int64_t>::max();
  }
  return a + b;
}

// Pascal triangle with saturation; C[i][j] = binomial(i, j) for j <= k_max.
std::vector<std::vector<std::int64_t>> binomial_table(std::int64_t n, std::int64_t k_max) {
  std::vector<std::vector<std::int64_t>> C(static_cast<std::size_t>(n) + 1,
                                           std::vector<std::int64_t>(static_cast<std::size_t>(k_max) + 1, 0));
  for (std::int64_t i = 0; i <= n; ++i) {
    C[i][0] = 1;
    for (std::int64_t j = 1; j <= std::min(i, k_max); ++j) {
      C[i][j] = saturating_add(C[i - 1][j - 1], i - 1 >= j ? C[i - 1][j] : 0);
    }
  }
  return C;
}

// Subset of {0..n-1} with lexicographic rank r among size-k subsets.
void unrank_subset(std::int64_t r, std::int64_t n, std::int64_t k,
                   const std::vector<std::vector<std::int64_t>>& C,
                   std::vector<std::int64_t>& out) {
  out.resize(static_cast<std::size_t>(k));
  std::int64_t value = 0;
  for (std::int64_t slot = 0; slot < k; ++slot) {
    for (;; ++value) {
      const std::int64_t with_value = C[n - 1 - value][k - 1 - slot];
      if (r < with_value) break;
      r -= with_value;
    }
    out[static_cast<std::size_t>(slot)] = value++;
  }
}

// Distinct patterns on a point set small enough to pack into one word.
std::int64_t packed_shatter_count(const HypothesisTable& table,
                                  const std::vector<std::int64_t>& points) {
  std::unordered_set<std::uint64_t> patterns;
  patterns.reserve(static_cast<std::size_t>(table.size()));
  for (const auto& row : table.rows()) {
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      bits |= static_cast<std::uint64_t>(row[static_cast<std::size_t>(points[i])]) << i;
    }
    patterns.insert(bits);
  }
  return static_cast<std::int64_t>(patterns.size());
}

void check_points(const HypothesisTable& table, const std::vector<std::int64_t>& points) {
  for (std::int64_t p : points) {
    if (p < 0 || p >= table.domain_size()) {
      throw DomainError("shatter_count: point index outside the domain");
    }
  }
}

std::int64_t theoretical_max_patterns(std::int64_t subset_size, std::int64_t n_hypotheses) {
  if (subset_size >= 63) return n_hypotheses;
  return std::min(std::int64_t{1} << subset_size, n_hypotheses);
}

struct GrowthPlan {
  std::int64_t k = 0;
  std::int64_t total = 0;
  std::vector<std::vector<std::int64_t>> C;
};

GrowthPlan plan_growth(const HypothesisTable& table, std::int64_t m,
                       const EnumerationBudget& budget) {
  if (m < 0) throw DomainError("growth_function: m must be nonnegative");
  const std::int64_t n = table.domain_size();
  if (n > budget.max_domain) {
    throw BudgetError("growth_function: domain size " + std::to_string(n) +
                      " exceeds the enumeration budget of " + std::to_string(budget.max_domain));
  }
  GrowthPlan plan;
  plan.k = std::min(m, n);
  if (plan.k > budget.max_subset) {
    throw BudgetError("growth_function: subset size " + std::to_string(plan.k) +
                      " exceeds the enumeration budget of " + std::to_string(budget.max_subset));
  }
  plan.C = binomial_table(n, std::max<std::int64_t>(plan.k, 1));
  plan.total = plan.C[static_cast<std::size_t>(n)][static_cast<std::size_t>(plan.k)];
  if (plan.total > kCombinationCap) {
    throw BudgetError("growth_function: enumeration would visit more than 2^40 subsets");
  }
  return plan;
}

}  // namespace

HypothesisTable::HypothesisTable(std::int64_t domain_size,
                                 std::vector<std::vector<std::uint8_t>> rows)
    : domain_size_(domain_size) {
  if (domain_size < 1) throw DomainError("hypothesis table: domain must contain a point");
  if (rows.empty()) throw DomainError("hypothesis table: at least one hypothesis required");
  std::unordered_set<std::string> seen;
  seen.reserve(rows.size());
  for (auto& row : rows) {
    if (static_cast<std::int64_t>(row.size()) != domain_size) {
      throw DomainError("hypothesis table: row width must equal the domain size");
    }
    for (std::uint8_t v : row) {
      if (v > 1) throw DomainError("hypothesis table: entries must be 0 or 1");
    }
    std::string key(row.begin(), row.end());
    if (seen.insert(std::move(key)).second) {
      rows_.push_back(std::move(row));
    }
  }
}

std::uint8_t HypothesisTable::label(std::int64_t hypothesis, std::int64_t point) const {
  return rows_[static_cast<std::size_t>(hypothesis)][static_cast<std::size_t>(point)];
}

namespace {

// Shared CSV walk: one row per line, '#' comments and blank lines skipped.
template <typename Cell>
std::vector<std::vector<Cell>> parse_csv(std::istream& in, Cell (*parse_cell)(const std::string&)) {
  std::vector<std::vector<Cell>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<Cell> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      row.push_back(parse_cell(cell));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::uint8_t parse_binary_cell(const std::string& cell) {
  const auto first = cell.find_first_not_of(" \t\r");
  if (first == std::string::npos) throw ConfigError("table csv: empty cell");
  const auto last = cell.find_last_not_of(" \t\r");
  const std::string body = cell.substr(first, last - first + 1);
  if (body == "0") return 0;
  if (body == "1") return 1;
  throw ConfigError("table csv: cell '" + body + "' is not 0 or 1");
}

double parse_double_cell(const std::string& cell) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    while (used < cell.size() && (cell[used] == ' ' || cell[used] == '\t' || cell[used] == '\r')) {
      ++used;
    }
    if (used != cell.size()) throw ConfigError("table csv: trailing junk in '" + cell + "'");
    return v;
  } catch (const std::invalid_argument&) {
    throw ConfigError("table csv: cell '" + cell + "' is not a number");
  } catch (const std::out_of_range&) {
    throw ConfigError("table csv: cell '" + cell + "' is out of range");
  }
}

}  // namespace

HypothesisTable HypothesisTable::from_csv(std::istream& in) {
  auto rows = parse_csv<std::uint8_t>(in, parse_binary_cell);
  if (rows.empty()) throw ConfigError("table csv: no rows");
  const auto domain = static_cast<std::int64_t>(rows.front().size());
  return HypothesisTable(domain, std::move(rows));
}

HypothesisTable HypothesisTable::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("table csv: cannot open " + path);
  return from_csv(in);
}

std::int64_t shatter_count(const HypothesisTable& table,
                           const std::vector<std::int64_t>& points) {
  check_points(table, points);
  if (points.size() <= 64) return packed_shatter_count(table, points);
  std::unordered_set<std::string> patterns;
  patterns.reserve(static_cast<std::size_t>(table.size()));
  for (const auto& row : table.rows()) {
    std::string key(points.size(), '\0');
    for (std::size_t i = 0; i < points.size(); ++i) {
      key[i] = static_cast<char>(row[static_cast<std::size_t>(points[i])]);
    }
    patterns.insert(std::move(key));
  }
  return static_cast<std::int64_t>(patterns.size());
}

std::int64_t growth_function(const HypothesisTable& table, std::int64_t m,
                             const EnumerationBudget& budget) {
  const GrowthPlan plan = plan_growth(table, m, budget);
  if (plan.k == 0) return 1;

  std::int64_t best = 0;
#pragma omp parallel
  {
    std::int64_t local_best = 0;
    std::vector<std::int64_t> subset;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t r = 0; r < plan.total; ++r) {
      unrank_subset(r, table.domain_size(), plan.k, plan.C, subset);
      local_best = std::max(local_best, packed_shatter_count(table, subset));
    }
#pragma omp critical
    best = std::max(best, local_best);
  }
  return best;
}

std::int64_t growth_function_serial(const HypothesisTable& table, std::int64_t m,
                                    const EnumerationBudget& budget) {
  const GrowthPlan plan = plan_growth(table, m, budget);
  if (plan.k == 0) return 1;
  const std::int64_t n = table.domain_size();
  const std::int64_t k = plan.k;
  const std::int64_t cap = theoretical_max_patterns(k, table.size());

  std::vector<std::int64_t> subset(static_cast<std::size_t>(k));
  std::iota(subset.begin(), subset.end(), 0);
  std::int64_t best = 0;
  for (;;) {
    best = std::max(best, packed_shatter_count(table, subset));
    if (best == cap) break;  // nothing larger is possible
    std::int64_t j = k - 1;
    while (j >= 0 && subset[static_cast<std::size_t>(j)] == n - k + j) --j;
    if (j < 0) break;
    ++subset[static_cast<std::size_t>(j)];
    for (std::int64_t l = j + 1; l < k; ++l) {
      subset[static_cast<std::size_t>(l)] = subset[static_cast<std::size_t>(l - 1)] + 1;
    }
  }
  return best;
}

std::int64_t vc_dimension(const HypothesisTable& table, const EnumerationBudget& budget) {
  const std::int64_t n = table.domain_size();
  if (n > budget.max_domain) {
    throw BudgetError("vc_dimension: domain size " + std::to_string(n) +
                      " exceeds the enumeration budget of " + std::to_string(budget.max_domain));
  }
  // A size-k shatter needs 2^k distinct rows, so k is capped by log2(size).
  std::int64_t k_cap = 0;
  while (k_cap < n && k_cap + 1 < 63 &&
         (std::int64_t{1} << (k_cap + 1)) <= table.size()) {
    ++k_cap;
  }
  for (std::int64_t k = 1; k <= k_cap; ++k) {
    if (k > budget.max_subset) {
      throw BudgetError("vc_dimension: certifying dimension >= " + std::to_string(k) +
                        " exceeds the subset budget of " + std::to_string(budget.max_subset));
    }
    const std::int64_t want = std::int64_t{1} << k;
    std::vector<std::int64_t> subset(static_cast<std::size_t>(k));
    std::iota(subset.begin(), subset.end(), 0);
    bool shattered = false;
    for (;;) {
      if (packed_shatter_count(table, subset) == want) {
        shattered = true;
        break;
      }
      std::int64_t j = k - 1;
      while (j >= 0 && subset[static_cast<std::size_t>(j)] == n - k + j) --j;
      if (j < 0) break;
      ++subset[static_cast<std::size_t>(j)];
      for (std::int64_t l = j + 1; l < k; ++l) {
        subset[static_cast<std::size_t>(l)] = subset[static_cast<std::size_t>(l - 1)] + 1;
      }
    }
    if (!shattered) return k - 1;
  }
  return k_cap;
}

LossTable::LossTable(std::int64_t domain_size, std::vector<std::vector<double>> rows)
    : domain_size_(domain_size), rows_(std::move(rows)) {
  if (domain_size < 1) throw DomainError("loss table: domain must contain a point");
  if (rows_.empty()) throw DomainError("loss table: at least one hypothesis required");
  for (const auto& row : rows_) {
    if (static_cast<std::int64_t>(row.size()) != domain_size) {
      throw DomainError("loss table: row width must equal the domain size");
    }
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw DomainError("loss table: losses must be finite and nonnegative");
      }
    }
  }
}

double LossTable::value(std::int64_t hypothesis, std::int64_t point) const {
  return rows_[static_cast<std::size_t>(hypothesis)][static_cast<std::size_t>(point)];
}

LossTable LossTable::from_csv(std::istream& in) {
  auto rows = parse_csv<double>(in, parse_double_cell);
  if (rows.empty()) throw ConfigError("table csv: no rows");
  const auto domain = static_cast<std::int64_t>(rows.front().size());
  return LossTable(domain, std::move(rows));
}

LossTable LossTable::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("table csv: cannot open " + path);
  return from_csv(in);
}

HypothesisTable threshold_class(const LossTable& losses, const std::vector<double>& thresholds) {
  if (thresholds.empty()) throw DomainError("threshold_class: need at least one threshold");
  std::vector<std::vector<std::uint8_t>> rows;
  rows.reserve(static_cast<std::size_t>(losses.size()) * thresholds.size());
  for (const auto& loss_row : losses.rows()) {
    for (double t : thresholds) {
      std::vector<std::uint8_t> row(loss_row.size());
      for (std::size_t i = 0; i < loss_row.size(); ++i) {
        row[i] = loss_row[i] > t ? 1 : 0;
      }
      rows.push_back(std::move(row));
    }
  }
  return HypothesisTable(losses.domain_size(), std::move(rows));
}

std::vector<double> row_threshold_grid(const LossTable& losses) {
  std::vector<double> grid;
  double lo = losses.rows().front().front();
  double hi = lo;
  for (const auto& row : losses.rows()) {
    std::vector<double> values(row);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      grid.push_back(0.5 * (values[i] + values[i + 1]));
    }
    lo = std::min(lo, values.front());
    hi = std::max(hi, values.back());
  }
  grid.push_back(lo - 1.0);
  grid.push_back(hi + 1.0);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

namespace {

std::int64_t level_set_dimension(const LossTable& losses,
                                 const std::vector<std::vector<double>>& per_point_thresholds,
                                 const EnumerationBudget& budget) {
  std::size_t columns = 0;
  for (const auto& t : per_point_thresholds) columns += t.size();
  if (columns == 0) return 0;  // constant in every coordinate: nothing to order
  if (static_cast<std::int64_t>(columns) > budget.max_domain) {
    throw BudgetError("pseudo_dimension: product domain of " + std::to_string(columns) +
                      " (point, threshold) pairs exceeds the enumeration budget of " +
                      std::to_string(budget.max_domain));
  }
  std::vector<std::vector<std::uint8_t>> rows;
  rows.reserve(static_cast<std::size_t>(losses.size()));
  for (const auto& loss_row : losses.rows()) {
    std::vector<std::uint8_t> row;
    row.reserve(columns);
    for (std::size_t i = 0; i < loss_row.size(); ++i) {
      for (double t : per_point_thresholds[i]) {
        row.push_back(loss_row[i] > t ? 1 : 0);
      }
    }
    rows.push_back(std::move(row));
  }
  return vc_dimension(HypothesisTable(static_cast<std::int64_t>(columns), std::move(rows)),
                      budget);
}

}  // namespace

std::int64_t pseudo_dimension(const LossTable& losses, const EnumerationBudget& budget) {
  // Midpoints of the distinct values the class takes at each point separate
  // every pair of behaviors there; no other threshold position matters.
  std::vector<std::vector<double>> per_point(static_cast<std::size_t>(losses.domain_size()));
  for (std::int64_t i = 0; i < losses.domain_size(); ++i) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(losses.size()));
    for (const auto& row : losses.rows()) values.push_back(row[static_cast<std::size_t>(i)]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t j = 0; j + 1 < values.size(); ++j) {
      per_point[static_cast<std::size_t>(i)].push_back(0.5 * (values[j] + values[j + 1]));
    }
  }
  return level_set_dimension(losses, per_point, budget);
}

std::int64_t pseudo_dimension(const LossTable& losses, const std::vector<double>& thresholds,
                              const EnumerationBudget& budget) {
  if (thresholds.empty()) throw DomainError("pseudo_dimension: need at least one threshold");
  std::vector<std::vector<double>> per_point(static_cast<std::size_t>(losses.domain_size()),
                                             thresholds);
  return level_set_dimension(losses, per_point, budget);
}

}  // namespace reldev::capacity
