#include "scalefree/valuation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "scalefree/error.hpp"
#include "scalefree/least_squares.hpp"

namespace scalefree {

namespace {

void check_scale(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("scale delta must lie in (0, 1), got " + std::to_string(delta));
  }
}

}  // namespace

double rel_abs(double t_e, double delta) {
  check_scale(delta);
  if (!(t_e > 0.0)) throw DomainError("rel_abs needs a positive argument");
  if (!(t_e < delta)) throw DomainError("argument is not infinitesimal relative to delta");
  return std::log(delta / t_e) / std::log(1.0 / delta);
}

double infinitesimal_value(double t, double delta) {
  if (t == 0.0) return 0.0;
  return rel_abs(std::abs(t), delta);
}

ValuedInfinitesimal::ValuedInfinitesimal(double lambda, double k, double xi)
    : lambda_(lambda), k_(k), xi_(xi) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive");
  if (!(k >= 0.0) || !std::isfinite(k)) throw DomainError("k must be nonnegative");
  if (!(xi >= 0.0) || !std::isfinite(xi)) throw DomainError("xi must be nonnegative");
}

double ValuedInfinitesimal::realize(double delta) const {
  check_scale(delta);
  return lambda_ * std::pow(delta, 1.0 + k_ + xi_);
}

double ValuedInfinitesimal::correction(double delta) const {
  check_scale(delta);
  return std::log(1.0 / lambda_) / std::log(1.0 / delta);
}

double ValuedInfinitesimal::value_at(double delta) const {
  return rel_abs(realize(delta), delta);
}

ValuedInfinitesimal sym_product(const ValuedInfinitesimal& a, const ValuedInfinitesimal& b) {
  return ValuedInfinitesimal(a.lambda() * b.lambda(), a.k() + b.k(), a.xi() + b.xi());
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::finite:
      return "finite";
    case Regime::infinitesimal:
      return "infinitesimal";
    case Regime::infinite:
      return "infinite";
  }
  return "finite";
}

UltraScalar ultra_norm(double r, double delta, double large) {
  check_scale(delta);
  if (!(large >= 1.0 / delta)) {
    throw DomainError("largeness threshold must be at least 1/delta");
  }
  const double magnitude = std::abs(r);
  if (magnitude == 0.0) return {Regime::infinitesimal, 0.0, delta};
  if (magnitude < delta) return {Regime::infinitesimal, rel_abs(magnitude, delta), delta};
  if (magnitude > large) return {Regime::infinite, rel_abs(1.0 / magnitude, delta), delta};
  return {Regime::finite, magnitude, std::nullopt};
}

nlohmann::ordered_json to_json(const UltraScalar& s) {
  nlohmann::ordered_json j;
  j["regime"] = std::string(to_string(s.regime));
  j["value"] = s.value;
  j["delta"] = s.scale ? nlohmann::ordered_json(*s.scale) : nlohmann::ordered_json(nullptr);
  return j;
}

Inversion invert_to_infinitesimal(double t, double delta, double lambda) {
  if (!(delta > 0.0)) throw DomainError("scale delta must be positive");
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  if (!(t > delta)) throw DomainError("t must exceed delta to be a real variable at this scale");
  const double t_tilde = lambda * delta * delta / t;
  if (!(t_tilde < delta)) throw DomainError("lambda too large: t~ is not below delta");
  const double mu = 1.0 + std::log(1.0 / lambda) / std::log(t / delta);
  return {t_tilde, mu};
}

AdelicComposite adelic_compose(const PAdicNumber& base, std::span<const PAdicNumber> units) {
  std::uint32_t previous = base.prime();
  for (const PAdicNumber& unit : units) {
    if (unit.prime() <= previous) {
      throw DomainError("unit primes must be strictly increasing and exceed the base prime");
    }
    if (padic_abs(unit) != 1) {
      throw DomainError("factor at prime " + std::to_string(unit.prime()) + " is not a unit");
    }
    previous = unit.prime();
  }
  return {padic_abs(base), base, std::vector<PAdicNumber>(units.begin(), units.end())};
}

double constant_to_log_variable_check(double phi0, double k, double delta, std::size_t samples) {
  check_scale(delta);
  if (samples < 3) throw DomainError("need at least 3 samples");
  if (!(phi0 > 0.0)) throw DomainError("phi0 must be positive");
  const double log_delta = std::log(delta);
  constexpr double kSpan = 0.1;  // s ranges over [0, kSpan]
  std::vector<double> log_t(samples);
  std::vector<double> log_phi(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double s = kSpan * static_cast<double>(i) / static_cast<double>(samples - 1);
    log_t[i] = log_delta * (1.0 - s);
    log_phi[i] = std::log(phi0) + k * s * log_delta;
  }
  return fit_line(log_t, log_phi).slope;
}

}  // namespace scalefree
