#pragma once

#include <span>

namespace scalefree {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares y = slope * x + intercept. Needs at least two
/// distinct abscissae; throws DomainError otherwise. r2 is 1 when y is
/// constant (a perfect horizontal fit).
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace scalefree
