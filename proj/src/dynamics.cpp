#include "scalefree/dynamics.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "scalefree/error.hpp"

namespace scalefree {

GoldenExpansion golden_cf(std::size_t iters) {
  if (iters < 1) throw DomainError("golden_cf needs at least one iteration");
  GoldenExpansion result;
  double x = 0.0;
  for (std::size_t k = 0; k < iters; ++k) {
    x = 1.0 / (1.0 + x);
    result.iterates.push_back(x);
  }
  result.value = x;
  for (std::size_t k = 0; k + 1 < result.iterates.size(); ++k) {
    const double before = std::abs(result.iterates[k] - kGoldenConjugate);
    const double after = std::abs(result.iterates[k + 1] - kGoldenConjugate);
    if (before == 0.0 || after == 0.0) break;
    result.error_ratios.push_back(after / before);
  }
  return result;
}

LadderState prime_ladder_walk(double x_max) {
  if (!(x_max >= 2.0)) throw DomainError("ladder walk needs x_max >= 2");
  const auto top = static_cast<std::uint64_t>(std::floor(x_max));
  LadderState state;
  std::vector<std::uint64_t> crossed;
  for (std::uint64_t n = 2; n <= top; ++n) {
    bool generated = false;
    for (std::uint64_t p : crossed) {
      if (p * p > n) break;
      if (n % p == 0) {
        generated = true;
        break;
      }
    }
    if (generated) continue;
    crossed.push_back(n);
    state.current_prime = n;
    ++state.inversion_count;
    state.cf_exponent = 1.0 / (1.0 + state.cf_exponent);
    state.trajectory.push_back({n, state.inversion_count, state.cf_exponent});
  }
  return state;
}

std::string LadderState::to_csv() const {
  std::ostringstream out;
  out << "prime,inversion_count,cf_exponent\n";
  std::array<char, 32> buffer{};
  for (const LadderEvent& e : trajectory) {
    std::snprintf(buffer.data(), buffer.size(), "%.12g", e.cf_exponent);
    out << e.prime << ',' << e.inversion_count << ',' << buffer.data() << '\n';
  }
  return out.str();
}

double solve_rescaled(double c, double t) {
  if (!(t > 0.0)) throw DomainError("t must be positive");
  if (t == 1.0) throw DomainError("t = 1 is singular for tau = C / ln t");
  return c / std::log(t);
}

double rescaled_residual(double c, double t) {
  const double tau = solve_rescaled(c, t);
  const double log_t = std::log(t);
  const double derivative = -c / (log_t * log_t);  // dtau / d(ln t)
  const double residual = log_t * derivative + tau;
  return tau == 0.0 ? std::abs(residual) : std::abs(residual / tau);
}

double asymptotic_correction(double t, std::int64_t pi_value, double nu) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("t must lie in (0, 1)");
  if (pi_value <= 0) throw DomainError("pi_value must be positive");
  if (!(nu >= 0.0 && nu < 1.0)) throw DomainError("nu must lie in [0, 1)");
  const double epsilon = t * std::log(1.0 / t);
  return epsilon * static_cast<double>(pi_value) * (1.0 - std::pow(t, nu));
}

}  // namespace scalefree
