#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace scalefree {

inline constexpr std::uint64_t kMaxSieveLimit = 1'000'000'000;

/// Exact prime counts at sorted checkpoints; the limit is always a checkpoint.
struct PiTable {
  std::uint64_t limit = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> checkpoints;  // (x, pi(x))

  /// pi(x) for a checkpoint x; DomainError if x exceeds the limit or was not
  /// requested when the table was built.
  std::uint64_t pi_at(std::uint64_t x) const;
  std::uint64_t pi_limit() const { return checkpoints.back().second; }
};

/// Segmented sieve of Eratosthenes over odd numbers. Segments are processed by
/// `threads` workers (0 = hardware concurrency) and merged in order, so the
/// result does not depend on the worker count. Requires 2 <= limit <= 1e9 and
/// checkpoints <= limit.
PiTable sieve_pi(std::uint64_t limit, std::span<const std::uint64_t> checkpoints = {},
                 unsigned threads = 0);

/// `points` values log-spaced over [x_min, x_max], endpoints exact; values
/// within 1e-12 relative of an integer are snapped to it.
std::vector<double> log_grid(double x_min, double x_max, std::size_t points);
/// `per_decade` points per decade from x_min to x_max (inclusive).
std::vector<double> decade_grid(double x_min, double x_max, std::size_t per_decade);
/// floor of each grid value, as sieve checkpoints.
std::vector<std::uint64_t> grid_checkpoints(std::span<const double> grid);

/// Logarithmic integral from 2: integral_2^x dt / ln t, by adaptive
/// Gauss-Kronrod quadrature. li_from_two(2) = 0.
double li_from_two(double x);

struct ScanRow {
  double x = 0.0;
  std::uint64_t pi = 0;
  double eps = 0.0;     // ln x / x
  double relerr = 0.0;  // pi * eps - 1
  double li = 0.0;
  double li_err = 0.0;  // li - pi
};

struct ErrorScan {
  std::vector<ScanRow> rows;
  double x_min = 0.0;
  double x_max = 0.0;

  /// Header `x,pi,eps,relerr,li,li_err`, 12 significant digits.
  std::string to_csv() const;
};

/// One row per grid value; pi is taken at floor(x).
ErrorScan pnt_scan(const PiTable& table, std::span<const double> grid);

struct FitResult {
  double exponent = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;

  /// {"exponent":e,"intercept":b,"r2":r,"x_min":a,"x_max":z}
  nlohmann::ordered_json to_json() const;
};

/// OLS of ln(relerr) on ln(x) over rows with x in [x_min, x_max]. Needs at
/// least three rows, all with relerr > 0.
FitResult fit_exponent(const ErrorScan& scan, double x_min, double x_max);

struct RhReport {
  double nu = 0.0;
  double sigma = 0.0;
  double exponent = 0.0;  // nu - 1/2 + sigma
  std::vector<double> t;
  std::vector<double> ratios;  // t^exponent, i.e. t^nu / (M t^(1/2 - sigma)) with M = 1
  bool bounded = false;        // every ratio <= 1
  bool monotone = false;       // ratios decrease as t decreases
  bool violated = false;       // exponent <= 0: the inequality runs the other way

  nlohmann::ordered_json to_json() const;
};

/// Compares t^nu with M t^(1/2 - sigma), M = 1, on a grid in (0, 1].
RhReport rh_bound_check(double nu, double sigma, std::span<const double> t_grid);

}  // namespace scalefree
