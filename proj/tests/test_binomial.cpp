#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "reldev/binomial.hpp"
#include "reldev/errors.hpp"

using reldev::DomainError;
using namespace reldev::binomial;

TEST_CASE("pmf matches exact rational values") {
  // C(10,3) 0.3^3 0.7^7 computed exactly and rounded to double.
  CHECK(pmf({10, 0.3}, 3) == doctest::Approx(0.266827932).epsilon(1e-14));
  CHECK(pmf({1, 0.25}, 0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(pmf({1, 0.25}, 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(pmf({4, 0.5}, 2) == doctest::Approx(0.375).epsilon(1e-15));
  // Degenerate probabilities stay exact.
  CHECK(pmf({7, 0.0}, 0) == 1.0);
  CHECK(pmf({7, 0.0}, 3) == 0.0);
  CHECK(pmf({7, 1.0}, 7) == 1.0);
}

TEST_CASE("pmf sums to one") {
  for (const auto& spec : {BinomialSpec{17, 0.3}, BinomialSpec{40, 0.871}, BinomialSpec{3, 0.5}}) {
    double sum = 0.0;
    for (std::int64_t k = 0; k <= spec.trials; ++k) sum += pmf(spec, k);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("tails at the mean match hand-computed cases") {
  // m=2, p=0.6: mean 1.2, Pr[X >= 2] = p^2.
  CHECK(tail_at_mean({2, 0.6}, Tail::geq_mean) == doctest::Approx(0.36).epsilon(1e-13));
  // m=3, p=0.9: mean 2.7, Pr[X = 3] = 0.729.
  CHECK(tail_at_mean({3, 0.9}, Tail::geq_mean) == doctest::Approx(0.729).epsilon(1e-13));
  // m=5, p=0.5: mean 2.5, Pr[X >= 3] = 1/2 by symmetry.
  CHECK(tail_at_mean({5, 0.5}, Tail::geq_mean) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(tail_at_mean({5, 0.5}, Tail::leq_mean) == doctest::Approx(0.5).epsilon(1e-13));
  // m=2, p=0.4: mean 0.8, Pr[X = 0] = 0.36.
  CHECK(tail_at_mean({2, 0.4}, Tail::leq_mean) == doctest::Approx(0.36).epsilon(1e-13));
  // Near the boundary p = 1/2 at m = 2 the tail sits just above 1/4.
  CHECK(tail_at_mean({2, 0.5001}, Tail::geq_mean) ==
        doctest::Approx(0.25010001).epsilon(1e-12));
}

TEST_CASE("an integer mean is included in the event") {
  // m=4, p=0.5: mean 2 exactly, Pr[X >= 2] = 11/16.
  CHECK(tail_at_mean({4, 0.5}, Tail::geq_mean) == doctest::Approx(0.6875).epsilon(1e-13));
  CHECK(tail_at_mean({4, 0.5}, Tail::leq_mean) == doctest::Approx(0.6875).epsilon(1e-13));
  // m=10, p=0.3: mean 3 exactly.
  double direct = 0.0;
  for (std::int64_t k = 3; k <= 10; ++k) direct += pmf({10, 0.3}, k);
  CHECK(tail_at_mean({10, 0.3}, Tail::geq_mean) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("mirror symmetry ties the two tails together") {
  // Pr[X <= mp] at p equals Pr[X >= m(1-p)] at 1-p: count failures instead.
  for (std::int64_t m : {2, 3, 7, 20, 61, 150}) {
    for (std::int64_t k = 1; k < 1000; k += 13) {
      const double p = static_cast<double>(k) / 1000.0;
      const double q = static_cast<double>(1000 - k) / 1000.0;
      const double left = tail_at_mean({m, p}, Tail::leq_mean);
      const double right = tail_at_mean({m, q}, Tail::geq_mean);
      CHECK(std::abs(left - right) < 1e-12);
    }
  }
}

TEST_CASE("scan finds the grid minimum just above the admissibility boundary") {
  ScanOptions opt;
  opt.max_trials = 50;
  opt.record_points = false;
  const auto result = scan_tail_minimum(Tail::geq_mean, opt);
  CHECK(result.argmin_trials == 2);
  CHECK(result.argmin_p == doctest::Approx(0.501).epsilon(1e-15));
  CHECK(result.min_tail == doctest::Approx(0.251001).epsilon(1e-12));
  CHECK(result.all_above_quarter);
  CHECK(result.skipped_trials.empty());
}

TEST_CASE("mirror scan stays above one quarter as well") {
  ScanOptions opt;
  opt.max_trials = 50;
  opt.record_points = false;
  const auto result = scan_tail_minimum(Tail::leq_mean, opt);
  CHECK(result.argmin_trials == 2);
  CHECK(result.argmin_p == doctest::Approx(0.499).epsilon(1e-15));
  CHECK(result.min_tail == doctest::Approx(0.251001).epsilon(1e-12));
  CHECK(result.all_above_quarter);
}

TEST_CASE("admissibility is decided in integer arithmetic") {
  ScanOptions opt;
  opt.max_trials = 6;
  opt.record_points = true;
  const auto result = scan_tail_minimum(Tail::geq_mean, opt);
  for (const auto& point : result.points) {
    // p > 1/m strictly: k m > K with exact integers.
    const auto k = static_cast<std::int64_t>(std::llround(point.p * 1000.0));
    CHECK(k * point.trials > 1000);
  }
}

TEST_CASE("a too-strict threshold skips small trial counts") {
  ScanOptions opt;
  opt.max_trials = 5;
  opt.threshold_numerator = 2;
  opt.record_points = false;
  const auto result = scan_tail_minimum(Tail::geq_mean, opt);
  REQUIRE(!result.skipped_trials.empty());
  CHECK(result.skipped_trials.front() == 2);
}

TEST_CASE("parallel scan agrees with the serial reference bit for bit") {
  ScanOptions opt;
  opt.max_trials = 40;
  opt.record_points = true;
  for (Tail which : {Tail::geq_mean, Tail::leq_mean}) {
    const auto par = scan_tail_minimum(which, opt);
    const auto ser = scan_tail_minimum_serial(which, opt);
    CHECK(par.min_tail == ser.min_tail);
    CHECK(par.argmin_trials == ser.argmin_trials);
    CHECK(par.argmin_p == ser.argmin_p);
    CHECK(par.all_above_quarter == ser.all_above_quarter);
    REQUIRE(par.points.size() == ser.points.size());
    for (std::size_t i = 0; i < par.points.size(); ++i) {
      CHECK(par.points[i].trials == ser.points[i].trials);
      CHECK(par.points[i].p == ser.points[i].p);
      CHECK(par.points[i].tail == ser.points[i].tail);
    }
  }
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(((void)pmf({0, 0.5}, 0)), DomainError);
  CHECK_THROWS_AS(((void)pmf({5, -0.1}, 0)), DomainError);
  CHECK_THROWS_AS(((void)pmf({5, 1.1}, 0)), DomainError);
  CHECK_THROWS_AS(((void)pmf({5, 0.5}, -1)), DomainError);
  CHECK_THROWS_AS(((void)pmf({5, 0.5}, 6)), DomainError);
  ScanOptions bad;
  bad.grid_denominator = 10;
  CHECK_THROWS_AS((void)scan_tail_minimum(Tail::geq_mean, bad), DomainError);
  ScanOptions tiny;
  tiny.max_trials = 1;
  CHECK_THROWS_AS((void)scan_tail_minimum(Tail::geq_mean, tiny), DomainError);
}
