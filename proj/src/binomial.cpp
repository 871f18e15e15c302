#include "reldev/binomial.hpp"

#include <algorithm>
#include <cmath>

#include "reldev/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace reldev::binomial {

namespace {

// Log-factorial table in extended precision, built serially so the parallel
// scan body never calls lgammal (which touches global state in libm).
std::vector<long double> log_factorials(std::int64_t n) {
  std::vector<long double> table(static_cast<std::size_t>(n) + 1);
  for (std::int64_t i = 0; i <= n; ++i) {
    table[static_cast<std::size_t>(i)] = lgammal(static_cast<long double>(i) + 1.0L);
  }
  return table;
}

// Sum of pmf(j) over [k_lo, k_hi] where one end of the range sits next to the
// mode. The anchor term at that end is evaluated in extended precision; the
// rest follow from the pmf ratio recurrence, so no term needs its own
// log-gamma evaluation. Terms only shrink away from the anchor and are
// accumulated smallest first with compensated summation, which keeps the
// relative error near 1e-14 even at m = 10^4.
double anchored_tail_sum(std::int64_t m, double p, std::int64_t k_lo, std::int64_t k_hi,
                         bool anchor_low, const long double* lfact) {
  const long double pl = static_cast<long double>(p);
  const long double ql = 1.0L - pl;
  const std::int64_t anchor = anchor_low ? k_lo : k_hi;

  long double log_choose;
  if (lfact != nullptr) {
    log_choose = lfact[m] - lfact[anchor] - lfact[m - anchor];
  } else {
    log_choose = lgammal(static_cast<long double>(m) + 1.0L) -
                 lgammal(static_cast<long double>(anchor) + 1.0L) -
                 lgammal(static_cast<long double>(m - anchor) + 1.0L);
  }
  const long double log_anchor = log_choose +
                                 static_cast<long double>(anchor) * logl(pl) +
                                 static_cast<long double>(m - anchor) * log1pl(-pl);

  std::vector<long double> terms;
  terms.reserve(static_cast<std::size_t>(k_hi - k_lo) + 1);
  long double term = expl(log_anchor);
  terms.push_back(term);
  if (anchor_low) {
    for (std::int64_t k = k_lo + 1; k <= k_hi; ++k) {
      term *= static_cast<long double>(m - k + 1) / static_cast<long double>(k) * (pl / ql);
      terms.push_back(term);
      // remaining terms are each below `term`; stop once they cannot matter
      if (term * static_cast<long double>(k_hi - k) < terms.front() * 1e-25L) break;
    }
  } else {
    for (std::int64_t k = k_hi - 1; k >= k_lo; --k) {
      term *= static_cast<long double>(k + 1) / static_cast<long double>(m - k) * (ql / pl);
      terms.push_back(term);
      if (term * static_cast<long double>(k - k_lo) < terms.front() * 1e-25L) break;
    }
  }

  long double sum = 0.0L;
  long double comp = 0.0L;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const long double y = *it - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return static_cast<double>(std::min(sum, 1.0L));
}

double tail_from_boundary(std::int64_t m, double p, std::int64_t k0, Tail which,
                          const long double* lfact) {
  if (which == Tail::geq_mean) {
    return anchored_tail_sum(m, p, k0, m, /*anchor_low=*/true, lfact);
  }
  return anchored_tail_sum(m, p, 0, k0, /*anchor_low=*/false, lfact);
}

struct ScanBest {
  double tail = 2.0;
  std::int64_t m = 0;
  std::int64_t k = 0;
};

bool improves(double tail, std::int64_t m, std::int64_t k, const ScanBest& best) {
  if (tail != best.tail) return tail < best.tail;
  if (m != best.m) return m < best.m;
  return k < best.k;
}

struct GridRow {
  std::int64_t k_lo = 0;
  std::int64_t k_hi = -1;       // empty when k_hi < k_lo
  std::size_t offset = 0;       // index of first point in ScanResult::points
};

void validate_options(const ScanOptions& opt) {
  if (opt.max_trials < 2) throw DomainError("scan: max_trials must be at least 2");
  if (opt.grid_denominator < 100) {
    throw DomainError("scan: grid_denominator must be at least 100 (p resolution at most 0.01)");
  }
  if (opt.threshold_numerator < 1) throw DomainError("scan: threshold_numerator must be positive");
}

// Admissible grid columns for row m, decided in exact integer arithmetic.
GridRow admissible_range(Tail which, std::int64_t m, const ScanOptions& opt) {
  const std::int64_t K = opt.grid_denominator;
  const std::int64_t t = opt.threshold_numerator;
  GridRow row;
  if (which == Tail::geq_mean) {
    row.k_lo = (t * K) / m + 1;  // smallest k with k*m > t*K
    row.k_hi = K - 1;
  } else {
    row.k_lo = 1;
    if (m <= t) return row;      // 1 - t/m <= 0: nothing admissible
    row.k_hi = std::min(K - 1, (K * (m - t) - 1) / m);  // largest k with k*m < K*(m-t)
  }
  return row;
}

ScanResult scan_common(Tail which, const ScanOptions& opt, bool parallel) {
  validate_options(opt);
  const std::int64_t K = opt.grid_denominator;
  const std::int64_t m_count = opt.max_trials - 1;

  std::vector<GridRow> rows(static_cast<std::size_t>(m_count));
  ScanResult result;
  std::size_t total_points = 0;
  for (std::int64_t i = 0; i < m_count; ++i) {
    const std::int64_t m = i + 2;
    GridRow row = admissible_range(which, m, opt);
    row.offset = total_points;
    if (row.k_hi >= row.k_lo) {
      total_points += static_cast<std::size_t>(row.k_hi - row.k_lo + 1);
    } else {
      result.skipped_trials.push_back(m);
    }
    rows[static_cast<std::size_t>(i)] = row;
  }
  if (opt.record_points) result.points.resize(total_points);

  const std::vector<long double> lfact = log_factorials(opt.max_trials);
  const long double* lf = lfact.data();

  ScanBest best;
  bool all_above = true;

  auto process_row = [&](std::int64_t i, ScanBest& local_best, bool& local_above) {
    const std::int64_t m = i + 2;
    const GridRow& row = rows[static_cast<std::size_t>(i)];
    for (std::int64_t k = row.k_lo; k <= row.k_hi; ++k) {
      const double p = static_cast<double>(k) / static_cast<double>(K);
      const std::int64_t mk = m * k;
      const std::int64_t k0 =
          which == Tail::geq_mean ? (mk + K - 1) / K : mk / K;  // ceil resp. floor of m p
      const double tail = tail_from_boundary(m, p, k0, which, lf);
      if (opt.record_points) {
        result.points[row.offset + static_cast<std::size_t>(k - row.k_lo)] = {m, p, tail};
      }
      if (!(tail > 0.25)) local_above = false;
      if (improves(tail, m, k, local_best)) local_best = {tail, m, k};
    }
  };

  if (parallel) {
#pragma omp parallel
    {
      ScanBest local_best;
      bool local_above = true;
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
      for (std::int64_t i = 0; i < m_count; ++i) process_row(i, local_best, local_above);
#pragma omp critical
      {
        if (!local_above) all_above = false;
        if (local_best.m != 0 && improves(local_best.tail, local_best.m, local_best.k, best)) {
          best = local_best;
        }
      }
    }
  } else {
    for (std::int64_t i = 0; i < m_count; ++i) process_row(i, best, all_above);
  }

  if (best.m == 0) throw DomainError("scan: no admissible grid point for any m");
  result.min_tail = best.tail;
  result.argmin_trials = best.m;
  result.argmin_p = static_cast<double>(best.k) / static_cast<double>(K);
  result.all_above_quarter = all_above;
  return result;
}

}  // namespace

void validate(const BinomialSpec& spec) {
  if (spec.trials < 1) throw DomainError("binomial: trials must be at least 1");
  if (!(spec.success_prob >= 0.0 && spec.success_prob <= 1.0)) {
    throw DomainError("binomial: success_prob must lie in [0, 1]");
  }
}

double pmf(const BinomialSpec& spec, std::int64_t k) {
  validate(spec);
  if (k < 0 || k > spec.trials) {
    throw DomainError("binomial: k must lie in [0, trials]");
  }
  const std::int64_t m = spec.trials;
  const double p = spec.success_prob;
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == m ? 1.0 : 0.0;
  const long double pl = static_cast<long double>(p);
  const long double log_term = lgammal(static_cast<long double>(m) + 1.0L) -
                               lgammal(static_cast<long double>(k) + 1.0L) -
                               lgammal(static_cast<long double>(m - k) + 1.0L) +
                               static_cast<long double>(k) * logl(pl) +
                               static_cast<long double>(m - k) * log1pl(-pl);
  return static_cast<double>(expl(log_term));
}

double tail_at_mean(const BinomialSpec& spec, Tail which) {
  validate(spec);
  const std::int64_t m = spec.trials;
  const double p = spec.success_prob;
  if (p == 0.0 || p == 1.0) return 1.0;  // the mean itself carries all the mass
  double mean = static_cast<double>(m) * p;
  // The inclusive-mean convention has to survive the rounding of p itself:
  // a probability like 0.04 is not an exact double, so 150 * 0.04 lands a few
  // ulp away from 6 and a raw ceil/floor would exclude the mean. Products
  // this close to an integer can only come from an exactly integer mean.
  const double nearest = std::round(mean);
  if (std::abs(mean - nearest) <= 1e-9 * std::max(1.0, mean)) mean = nearest;
  const std::int64_t k0 = which == Tail::geq_mean
                              ? static_cast<std::int64_t>(std::ceil(mean))
                              : static_cast<std::int64_t>(std::floor(mean));
  return tail_from_boundary(m, p, k0, which, nullptr);
}

ScanResult scan_tail_minimum(Tail which, const ScanOptions& options) {
  return scan_common(which, options, options.parallel);
}

ScanResult scan_tail_minimum_serial(Tail which, const ScanOptions& options) {
  return scan_common(which, options, false);
}

}  // namespace reldev::binomial
