#include "reldev/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "reldev/errors.hpp"
#include "reldev/rng.hpp"

namespace reldev::analytic {

namespace {

void check_ratio_params(double alpha, double eta) {
  if (!(alpha > 1.0)) throw DomainError("deviation_ratio: alpha must exceed 1");
  if (!(eta > 0.0)) throw DomainError("deviation_ratio: eta must be positive");
}

// One probe draw: log-uniform x, y in [1e-4, 1e2] and step delta in [1e-4, 1e1].
struct ProbeDraw {
  double x, y, delta;
};

ProbeDraw probe_draw(std::uint64_t seed, std::int64_t index) {
  rng::SplitMix64 gen = rng::stream(seed, static_cast<std::uint64_t>(index));
  auto log_uniform = [&](double lo_exp, double hi_exp) {
    return std::pow(10.0, lo_exp + (hi_exp - lo_exp) * gen.uniform());
  };
  ProbeDraw d;
  d.x = log_uniform(-4.0, 2.0);
  d.y = log_uniform(-4.0, 2.0);
  d.delta = log_uniform(-4.0, 1.0);
  return d;
}

struct ProbeAccumulator {
  std::int64_t violations = 0;
  double min_margin = std::numeric_limits<double>::infinity();

  void observe(double margin) {
    if (!(margin > 0.0)) ++violations;
    min_margin = std::min(min_margin, margin);
  }
  void merge(const ProbeAccumulator& other) {
    violations += other.violations;
    min_margin = std::min(min_margin, other.min_margin);
  }
};

void probe_index(double alpha, double eta, RatioVariant variant, std::uint64_t seed,
                 std::int64_t i, ProbeAccumulator& acc) {
  const ProbeDraw d = probe_draw(seed, i);
  const double base = deviation_ratio(alpha, eta, d.x, d.y, variant);
  acc.observe(deviation_ratio(alpha, eta, d.x + d.delta, d.y, variant) - base);
  acc.observe(base - deviation_ratio(alpha, eta, d.x, d.y + d.delta, variant));
}

ProbeResult probe_common(double alpha, double eta, RatioVariant variant,
                         std::int64_t samples, std::uint64_t seed, bool parallel) {
  check_ratio_params(alpha, eta);
  if (samples < 1) throw DomainError("monotonicity_probe: samples must be positive");
  ProbeAccumulator acc;
  if (parallel) {
#pragma omp parallel
    {
      ProbeAccumulator local;
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < samples; ++i) {
        probe_index(alpha, eta, variant, seed, i, local);
      }
#pragma omp critical
      acc.merge(local);
    }
  } else {
    for (std::int64_t i = 0; i < samples; ++i) probe_index(alpha, eta, variant, seed, i, acc);
  }
  return {samples, acc.violations, acc.min_margin};
}

// Adaptive Simpson with Richardson correction on the halved panels.
struct SimpsonIntegrand {
  const std::function<double(double)>& tail;
  double alpha;

  double operator()(double t) const {
    if (t <= 0.0) return alpha == 1.0 ? tail(0.0) : 0.0;
    return alpha * std::pow(t, alpha - 1.0) * tail(t);
  }
};

double simpson_panel(const SimpsonIntegrand& f, double a, double fa, double b, double fb,
                     double& fm) {
  const double m = 0.5 * (a + b);
  fm = f(m);
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_recurse(const SimpsonIntegrand& f, double a, double fa, double b, double fb,
                       double m, double fm, double whole, double tol, int depth) {
  double fl, fr;
  const double left = simpson_panel(f, a, fa, m, fm, fl);
  const double right = simpson_panel(f, m, fm, b, fb, fr);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_recurse(f, a, fa, m, fm, 0.5 * (a + m), fl, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, fm, b, fb, 0.5 * (m + b), fr, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const SimpsonIntegrand& f, double a, double b, double tol, int depth) {
  if (!(b > a)) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  double fm;
  const double whole = simpson_panel(f, a, fa, b, fb, fm);
  return simpson_recurse(f, a, fa, b, fb, 0.5 * (a + b), fm, whole, tol, depth);
}

}  // namespace

double deviation_ratio(double alpha, double eta, double x, double y, RatioVariant variant) {
  check_ratio_params(alpha, eta);
  if (!(x >= 0.0) || !(y >= 0.0)) throw DomainError("deviation_ratio: x and y must be nonnegative");
  double base = x + y + eta;
  if (variant == RatioVariant::half_sum) base *= 0.5;
  return (x - y) / std::pow(base, 1.0 / alpha);
}

ProbeResult monotonicity_probe(double alpha, double eta, RatioVariant variant,
                               std::int64_t samples, std::uint64_t seed) {
  return probe_common(alpha, eta, variant, samples, seed, true);
}

ProbeResult monotonicity_probe_serial(double alpha, double eta, RatioVariant variant,
                                      std::int64_t samples, std::uint64_t seed) {
  return probe_common(alpha, eta, variant, samples, seed, false);
}

ApproxCheck sqrt_log_approx(double epsilon, double beta) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw DomainError("sqrt_log_approx: epsilon must lie in (0, 1]");
  }
  if (!(beta > 0.0)) throw DomainError("sqrt_log_approx: beta must be positive");
  ApproxCheck result;
  result.lhs = epsilon * std::sqrt(1.0 + 0.5 * std::log(1.0 / epsilon));
  result.rhs = std::pow(epsilon, beta);
  result.holds = result.lhs <= result.rhs;
  return result;
}

double tail_integral_moment(const std::function<double(double)>& tail, double alpha,
                            const QuadratureOptions& options) {
  if (!(alpha >= 1.0)) throw DomainError("tail_integral_moment: alpha must be at least 1");
  if (!(options.scale_hint > 0.0)) {
    throw DomainError("tail_integral_moment: scale_hint must be positive");
  }
  if (!(options.rel_tol > 0.0) || !std::isfinite(options.rel_tol)) {
    throw DomainError("tail_integral_moment: rel_tol must be positive");
  }

  // Find a truncation point T with a negligible, extrapolatable remainder.
  double T = options.scale_hint;
  double remainder = 0.0;
  bool settled = false;
  int slow_decay_streak = 0;
  for (int i = 0; i < options.max_doublings; ++i) {
    const double f1 = tail(T);
    const double f2 = tail(2.0 * T);
    const double f4 = tail(4.0 * T);
    if (!(f1 >= 0.0 && f1 <= 1.0) || !(f2 >= 0.0 && f2 <= 1.0) || !(f4 >= 0.0 && f4 <= 1.0)) {
      throw DomainError("tail_integral_moment: tail values must lie in [0, 1]");
    }
    if (f1 == 0.0) {
      remainder = 0.0;
      settled = true;
      break;
    }
    if (f2 > 0.0) {
      // Local decay exponent from the doubling ratio; remainder under the
      // fitted power law tail(t) ~ f1 (T/t)^ahat beyond T.
      const double ahat = std::log(f1 / f2) / std::log(2.0);
      if (ahat > alpha * (1.0 + 1e-9) + 1e-12) {
        slow_decay_streak = 0;
        remainder = alpha * f1 * std::pow(T, alpha) / (ahat - alpha);
        if (remainder < 1e-10) {
          settled = true;
          break;
        }
        // If the next doubling sees the same exponent the tail is in a clean
        // power-law regime and the extrapolated remainder is exact for it; no
        // point pushing T far enough to make the remainder absolutely tiny.
        if (f4 > 0.0) {
          const double ahat_next = std::log(f2 / f4) / std::log(2.0);
          if (std::abs(ahat_next - ahat) <= 1e-8 * std::max(1.0, std::abs(ahat))) {
            settled = true;
            break;
          }
        }
      } else if (++slow_decay_streak >= 10) {
        throw DivergenceError(
            "tail_integral_moment: tail decays no faster than t^-alpha; moment diverges");
      }
    }
    T *= 2.0;
  }
  if (!settled) {
    throw DivergenceError("tail_integral_moment: no usable truncation point found");
  }

  const SimpsonIntegrand f{tail, alpha};
  // Integrate in two pieces split at the scale hint; survival functions often
  // kink there and the panel split keeps the subdivision shallow.
  const double split = std::min(options.scale_hint, T);
  const double tol = options.rel_tol * std::max(1.0, remainder + std::pow(split, alpha));
  const double head = adaptive_simpson(f, 0.0, split, 0.5 * tol, options.max_depth);
  const double body = adaptive_simpson(f, split, T, 0.5 * tol, options.max_depth);
  return head + body + remainder;
}

double Pareto::tail(double t) const {
  if (t <= scale) return 1.0;
  return std::pow(scale / t, shape);
}

double Pareto::mean() const {
  if (!(shape > 1.0)) throw DomainError("pareto: mean requires shape > 1");
  return shape * scale / (shape - 1.0);
}

double Pareto::moment(double order) const {
  if (!(order > 0.0)) throw DomainError("pareto: moment order must be positive");
  if (!(order < shape)) {
    throw DomainError("pareto: moment of order alpha is infinite (alpha >= shape)");
  }
  return shape * std::pow(scale, order) / (shape - order);
}

double Pareto::sqrt_tail_integral() const {
  if (!(shape > 2.0)) throw DomainError("pareto: sqrt tail integral requires shape > 2");
  return scale * shape / (shape - 2.0);
}

}  // namespace reldev::analytic
