#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace scalefree {

/// (sqrt(5) - 1) / 2, the fixed point of x -> 1 / (1 + x).
inline constexpr double kGoldenConjugate = 0.61803398874989484820;

struct GoldenExpansion {
  double value = 0.0;
  std::vector<double> iterates;      // x_1 .. x_iters
  std::vector<double> error_ratios;  // |x_{k+1} - nu| / |x_k - nu|, while both errors are nonzero
};

/// Iterates x <- 1 / (1 + x) from x_0 = 0; x_k = F_k / F_{k+1}.
GoldenExpansion golden_cf(std::size_t iters);

struct LadderEvent {
  std::uint64_t prime = 0;
  std::uint64_t inversion_count = 0;
  double cf_exponent = 0.0;
};

/// Growing-mode walk: the rescaled variable climbs through the scales 1/n;
/// a scale not generated by a previously crossed primal scale is primal and
/// triggers one inversion, which adds one continued-fraction level to the
/// exponent.
struct LadderState {
  std::uint64_t current_prime = 0;
  std::uint64_t inversion_count = 0;
  double cf_exponent = 0.0;
  std::vector<LadderEvent> trajectory;

  /// prime,inversion_count,cf_exponent rows.
  std::string to_csv() const;
};

LadderState prime_ladder_walk(double x_max);

/// tau(t) = C / ln t, the solution of ln t * dtau/d(ln t) = -tau.
double solve_rescaled(double c, double t);
/// |ln t * dtau/d(ln t) + tau| / |tau| with the analytic derivative.
double rescaled_residual(double c, double t);

/// epsilon(t) * pi_value * (1 - t^nu) with epsilon(t) = t ln(1/t).
double asymptotic_correction(double t, std::int64_t pi_value, double nu);

}  // namespace scalefree
