#include "scalefree/pnt_lab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "scalefree/error.hpp"
#include "scalefree/least_squares.hpp"

namespace scalefree {

namespace {

std::string g12(double value) {
  std::array<char, 32> buffer{};
  std::snprintf(buffer.data(), buffer.size(), "%.12g", value);
  return buffer.data();
}

double snap_to_integer(double x) {
  const double nearest = std::round(x);
  return std::abs(x - nearest) <= 1e-12 * std::abs(x) ? nearest : x;
}

}  // namespace

std::vector<double> log_grid(double x_min, double x_max, std::size_t points) {
  if (!(x_min > 0.0) || !(x_max >= x_min)) throw DomainError("log grid needs 0 < x_min <= x_max");
  if (points < 2) throw DomainError("log grid needs at least two points");
  const double low = std::log10(x_min);
  const double high = std::log10(x_max);
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double e = low + (high - low) * static_cast<double>(i) / static_cast<double>(points - 1);
    grid[i] = snap_to_integer(std::pow(10.0, e));
  }
  grid.front() = x_min;
  grid.back() = x_max;
  return grid;
}

std::vector<double> decade_grid(double x_min, double x_max, std::size_t per_decade) {
  if (per_decade < 1) throw DomainError("need at least one point per decade");
  if (!(x_min > 0.0) || !(x_max > x_min)) throw DomainError("decade grid needs 0 < x_min < x_max");
  const double decades = std::log10(x_max) - std::log10(x_min);
  const auto intervals = static_cast<std::size_t>(std::llround(decades * static_cast<double>(per_decade)));
  return log_grid(x_min, x_max, std::max<std::size_t>(intervals, 1) + 1);
}

std::vector<std::uint64_t> grid_checkpoints(std::span<const double> grid) {
  std::vector<std::uint64_t> xs;
  xs.reserve(grid.size());
  for (double x : grid) {
    if (!(x >= 0.0)) throw DomainError("grid values must be nonnegative");
    xs.push_back(static_cast<std::uint64_t>(std::floor(x)));
  }
  return xs;
}

double li_from_two(double x) {
  if (!(x >= 2.0)) throw DomainError("li_from_two needs x >= 2");
  if (x == 2.0) return 0.0;
  // Substituting t = e^u gives a smooth integrand e^u / u on [ln 2, ln x].
  const auto integrand = [](double u) { return std::exp(u) / u; };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, std::log(2.0), std::log(x), 20, 1e-14);
}

std::string ErrorScan::to_csv() const {
  std::ostringstream out;
  out << "x,pi,eps,relerr,li,li_err\n";
  for (const ScanRow& row : rows) {
    out << g12(row.x) << ',' << row.pi << ',' << g12(row.eps) << ',' << g12(row.relerr) << ','
        << g12(row.li) << ',' << g12(row.li_err) << '\n';
  }
  return out.str();
}

ErrorScan pnt_scan(const PiTable& table, std::span<const double> grid) {
  if (grid.empty()) throw DomainError("empty scan grid");
  ErrorScan scan;
  for (double x : grid) {
    if (!(x >= 2.0)) throw DomainError("scan grid values must be >= 2");
    ScanRow row;
    row.x = x;
    row.pi = table.pi_at(static_cast<std::uint64_t>(std::floor(x)));
    row.eps = std::log(x) / x;
    row.relerr = static_cast<double>(row.pi) * row.eps - 1.0;
    row.li = li_from_two(x);
    row.li_err = row.li - static_cast<double>(row.pi);
    scan.rows.push_back(row);
  }
  std::sort(scan.rows.begin(), scan.rows.end(),
            [](const ScanRow& a, const ScanRow& b) { return a.x < b.x; });
  scan.x_min = scan.rows.front().x;
  scan.x_max = scan.rows.back().x;
  return scan;
}

nlohmann::ordered_json FitResult::to_json() const {
  return {{"exponent", exponent}, {"intercept", intercept}, {"r2", r2}, {"x_min", x_min}, {"x_max", x_max}};
}

FitResult fit_exponent(const ErrorScan& scan, double x_min, double x_max) {
  std::vector<double> log_x;
  std::vector<double> log_err;
  for (const ScanRow& row : scan.rows) {
    if (row.x < x_min * (1.0 - 1e-12) || row.x > x_max * (1.0 + 1e-12)) continue;
    if (!(row.relerr > 0.0)) {
      throw DomainError("nonpositive relative error at x = " + g12(row.x) + "; cannot take its log");
    }
    log_x.push_back(std::log(row.x));
    log_err.push_back(std::log(row.relerr));
  }
  if (log_x.size() < 3) throw DomainError("fit window holds fewer than 3 rows");
  const LineFit line = fit_line(log_x, log_err);
  return {line.slope, line.intercept, line.r2, x_min, x_max};
}

nlohmann::ordered_json RhReport::to_json() const {
  return {{"nu", nu},           {"sigma", sigma},       {"exponent", exponent},
          {"bounded", bounded}, {"monotone", monotone}, {"violated", violated},
          {"t_min", t.empty() ? 0.0 : *std::min_element(t.begin(), t.end())},
          {"ratio_min", ratios.empty() ? 0.0 : *std::min_element(ratios.begin(), ratios.end())}};
}

RhReport rh_bound_check(double nu, double sigma, std::span<const double> t_grid) {
  if (!(nu > 0.0 && nu < 1.0)) throw DomainError("nu must lie in (0, 1)");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (t_grid.empty()) throw DomainError("empty t grid");
  RhReport report;
  report.nu = nu;
  report.sigma = sigma;
  report.exponent = nu - 0.5 + sigma;
  report.violated = report.exponent <= 0.0;
  std::vector<double> ts(t_grid.begin(), t_grid.end());
  for (double t : ts) {
    if (!(t > 0.0 && t <= 1.0)) throw DomainError("t grid values must lie in (0, 1]");
  }
  std::sort(ts.begin(), ts.end(), std::greater<>());
  report.bounded = true;
  report.monotone = true;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double ratio = std::pow(ts[i], report.exponent);
    if (ratio > 1.0) report.bounded = false;
    if (i > 0 && ts[i] < ts[i - 1] && !(ratio < report.ratios.back())) report.monotone = false;
    report.t.push_back(ts[i]);
    report.ratios.push_back(ratio);
  }
  return report;
}

}  // namespace scalefree
