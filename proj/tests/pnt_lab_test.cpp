#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "scalefree/error.hpp"
#include "scalefree/pnt_lab.hpp"

using scalefree::DomainError;

namespace {
const scalefree::PiTable& table_1e6() {
  static const auto table = [] {
    const auto grid = scalefree::decade_grid(1e3, 1e6, 40);
    const auto checkpoints = scalefree::grid_checkpoints(grid);
    return scalefree::sieve_pi(1'000'000, checkpoints);
  }();
  return table;
}
}  // namespace

TEST(Sieve, SmallCounts) {
  EXPECT_EQ(scalefree::sieve_pi(2).pi_limit(), 1u);
  EXPECT_EQ(scalefree::sieve_pi(10).pi_limit(), 4u);
  EXPECT_EQ(scalefree::sieve_pi(100).pi_limit(), 25u);
  EXPECT_EQ(scalefree::sieve_pi(1'000'000).pi_limit(), 78498u);
}

TEST(Sieve, Errors) {
  EXPECT_THROW(scalefree::sieve_pi(1), DomainError);
  EXPECT_THROW(scalefree::sieve_pi(scalefree::kMaxSieveLimit + 1), DomainError);
  const std::vector<std::uint64_t> beyond = {200};
  EXPECT_THROW(scalefree::sieve_pi(100, beyond), DomainError);
  EXPECT_THROW(scalefree::sieve_pi(100).pi_at(50), DomainError);
}

TEST(Sieve, AgreesWithTrialDivisionAtEveryCheckpoint) {
  std::vector<std::uint64_t> checkpoints;
  for (std::uint64_t x = 2; x <= 100000; x += (x < 1000 ? 1 : 97)) checkpoints.push_back(x);
  const auto table = scalefree::sieve_pi(100000, checkpoints);
  std::uint64_t count = 0;
  std::size_t next = 0;
  for (std::uint64_t n = 2; n <= 100000 && next < checkpoints.size(); ++n) {
    count += scalefree::oracle::trial_division_prime(n);
    if (n == checkpoints[next]) {
      ASSERT_EQ(table.pi_at(n), count) << n;
      ++next;
    }
  }
  EXPECT_EQ(table.pi_limit(), scalefree::oracle::plain_pi(100000));
}

TEST(Sieve, IndependentOfThreadCount) {
  const auto grid = scalefree::decade_grid(10, 3e6, 25);
  const auto checkpoints = scalefree::grid_checkpoints(grid);
  const auto reference = scalefree::sieve_pi(3'000'000, checkpoints, 1);
  for (unsigned threads : {2u, 3u, 8u}) {
    EXPECT_EQ(scalefree::sieve_pi(3'000'000, checkpoints, threads).checkpoints, reference.checkpoints);
  }
  EXPECT_EQ(reference.pi_limit(), scalefree::oracle::plain_pi(3'000'000));
}

TEST(Grid, EndpointsAndSpacing) {
  const auto grid = scalefree::log_grid(1e3, 1e6, 30);
  ASSERT_EQ(grid.size(), 30u);
  EXPECT_EQ(grid.front(), 1e3);
  EXPECT_EQ(grid.back(), 1e6);
  const auto decades = scalefree::decade_grid(1e3, 1e8, 40);
  EXPECT_EQ(decades.size(), 201u);
  EXPECT_EQ(decades[40], 1e4);
  EXPECT_THROW(scalefree::log_grid(0.0, 10.0, 5), DomainError);
  EXPECT_THROW(scalefree::log_grid(1.0, 10.0, 1), DomainError);
}

TEST(LogIntegral, MatchesSeriesOracle) {
  EXPECT_EQ(scalefree::li_from_two(2.0), 0.0);
  for (double x : {3.0, 10.0, 1e3, 1e6, 1e8}) {
    EXPECT_NEAR(scalefree::li_from_two(x), scalefree::oracle::li_from_two(x), 1e-9 * scalefree::oracle::li_from_two(x)) << x;
  }
  EXPECT_NEAR(scalefree::li_from_two(1e6), 78626.50399568, 1e-6);
}

TEST(PntScan, KnownValues) {
  const std::vector<double> grid = {1e3, 1e6};
  const auto scan = scalefree::pnt_scan(table_1e6(), grid);
  ASSERT_EQ(scan.rows.size(), 2u);
  EXPECT_EQ(scan.rows[0].pi, 168u);
  EXPECT_NEAR(scan.rows[0].relerr, 0.160502886869, 1e-11);
  EXPECT_NEAR(scan.rows[1].relerr, 0.084489947779, 1e-11);
  EXPECT_NEAR(scan.rows[1].li_err, 128.50399568, 1e-6);
  EXPECT_NEAR(scan.rows[0].eps, std::log(1e3) / 1e3, 1e-18);
}

TEST(PntScan, RequiresCoveredGrid) {
  const std::vector<double> grid = {1e3, 2e6};
  EXPECT_THROW(scalefree::pnt_scan(table_1e6(), grid), DomainError);
  const std::vector<double> low = {1.0};
  EXPECT_THROW(scalefree::pnt_scan(table_1e6(), low), DomainError);
}

TEST(PntScan, ErrorBandAndSign) {
  const auto grid = scalefree::decade_grid(1e3, 1e6, 40);
  const auto scan = scalefree::pnt_scan(table_1e6(), grid);
  for (const auto& row : scan.rows) {
    const double inv_log = 1.0 / std::log(row.x);
    EXPECT_GT(row.relerr, 0.5 * inv_log) << row.x;
    EXPECT_LT(row.relerr, 2.0 * inv_log) << row.x;
    EXPECT_GT(row.li_err, 0.0) << row.x;
  }
}

TEST(PntScan, CsvHeader) {
  const std::vector<double> grid = {1e3};
  const auto csv = scalefree::pnt_scan(table_1e6(), grid).to_csv();
  EXPECT_EQ(csv.rfind("x,pi,eps,relerr,li,li_err\n1000,168,", 0), 0u);
}

TEST(FitExponent, RecoversSyntheticPowerLaw) {
  scalefree::ErrorScan scan;
  for (double x : scalefree::log_grid(1e3, 1e6, 20)) {
    scan.rows.push_back({x, 0, 0.0, 2.0 * std::pow(x, -0.5), 0.0, 0.0});
  }
  const auto fit = scalefree::fit_exponent(scan, 1e3, 1e6);
  EXPECT_NEAR(fit.exponent, -0.5, 1e-12);
  EXPECT_NEAR(fit.intercept, std::log(2.0), 1e-10);
  EXPECT_NEAR(fit.r2, 1.0, 1e-12);
  EXPECT_THROW(scalefree::fit_exponent(scan, 1e3, 1.1e3), DomainError);
  scan.rows[3].relerr = -0.1;
  EXPECT_THROW(scalefree::fit_exponent(scan, 1e3, 1e6), DomainError);
}

TEST(FitExponent, PrimeCountingErrorDecaysSlowly) {
  const auto grid = scalefree::decade_grid(1e3, 1e6, 40);
  const auto fit = scalefree::fit_exponent(scalefree::pnt_scan(table_1e6(), grid), 1e3, 1e6);
  EXPECT_NEAR(fit.exponent, -0.09, 0.03);
  EXPECT_GT(fit.r2, 0.9);
  const auto json = fit.to_json();
  EXPECT_EQ(json.begin().key(), "exponent");
}

TEST(RhCheck, BoundedWhenExponentPositive) {
  const auto grid = scalefree::log_grid(1e-8, 1.0, 81);
  const auto report = scalefree::rh_bound_check(0.618, 0.05, grid);
  EXPECT_NEAR(report.exponent, 0.168, 1e-15);
  EXPECT_TRUE(report.bounded);
  EXPECT_TRUE(report.monotone);
  EXPECT_FALSE(report.violated);
  const std::vector<double> one = {1e-3};
  EXPECT_NEAR(scalefree::rh_bound_check(0.618, 0.05, one).ratios[0], 0.313328572432, 1e-11);
}

TEST(RhCheck, ViolatedWhenExponentNegative) {
  const auto grid = scalefree::log_grid(1e-8, 1.0, 81);
  const auto report = scalefree::rh_bound_check(0.3, 0.05, grid);
  EXPECT_TRUE(report.violated);
  EXPECT_FALSE(report.bounded);
  EXPECT_THROW(scalefree::rh_bound_check(0.0, 0.05, grid), DomainError);
  EXPECT_THROW(scalefree::rh_bound_check(0.5, 0.0, grid), DomainError);
  const std::vector<double> bad = {2.0};
  EXPECT_THROW(scalefree::rh_bound_check(0.5, 0.05, bad), DomainError);
}

TEST(PntScan, RelativeErrorDecreasesAtCoarseResolution) {
  const auto fine = scalefree::decade_grid(1e3, 1e8, 40);
  const auto table = scalefree::sieve_pi(100'000'000, scalefree::grid_checkpoints(fine));
  const auto coarse_grid = scalefree::decade_grid(1e3, 1e8, 4);
  const auto coarse = scalefree::pnt_scan(table, coarse_grid);
  for (std::size_t i = 1; i < coarse.rows.size(); ++i) {
    EXPECT_LT(coarse.rows[i].relerr, coarse.rows[i - 1].relerr) << coarse.rows[i].x;
  }
  // At 40 points per decade the local prime-gap noise wins over the 1/ln x drift.
  const auto scan = scalefree::pnt_scan(table, fine);
  int rises = 0;
  for (std::size_t i = 1; i < scan.rows.size(); ++i) rises += scan.rows[i].relerr >= scan.rows[i - 1].relerr;
  EXPECT_GT(rises, 0);
  EXPECT_LT(scan.rows.back().relerr, scan.rows.front().relerr);
}
