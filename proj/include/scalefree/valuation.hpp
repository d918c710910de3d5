#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "scalefree/padic.hpp"
#include "scalefree/rational.hpp"

namespace scalefree {

/// Log-scale absolute value of a positive infinitesimal relative to delta:
/// ln(delta / t_e) / ln(1 / delta). Requires 0 < t_e < delta < 1.
double rel_abs(double t_e, double delta);

/// rel_abs extended to signed arguments in (-delta, delta): symmetric in the
/// sign, and 0 at 0.
double infinitesimal_value(double t, double delta);

/// Symbolic relative infinitesimal t~ = lambda * delta^(1 + k + xi).
///
/// `k` is the scale-free limiting value; products add k, so the induced
/// absolute value is multiplicative by construction. `xi` is an inert
/// correction exponent carried as data.
class ValuedInfinitesimal {
 public:
  ValuedInfinitesimal(double lambda, double k, double xi = 0.0);

  double lambda() const { return lambda_; }
  double k() const { return k_; }
  double xi() const { return xi_; }

  /// Value as delta -> 0+, independent of lambda.
  double limit_value() const { return k_; }
  /// Real realization at scale delta.
  double realize(double delta) const;
  /// Lambda-dependent finite-scale term ln(1/lambda) / ln(1/delta).
  double correction(double delta) const;
  /// rel_abs(realize(delta), delta) = k + xi + correction(delta).
  double value_at(double delta) const;

 private:
  double lambda_;
  double k_;
  double xi_;
};

ValuedInfinitesimal sym_product(const ValuedInfinitesimal& a, const ValuedInfinitesimal& b);

enum class Regime { finite, infinitesimal, infinite };

std::string_view to_string(Regime regime);

struct UltraScalar {
  Regime regime = Regime::finite;
  double value = 0.0;
  std::optional<double> scale;  // absent in the finite regime
};

/// Extended norm on the reals: Euclidean on the closed band [delta, large],
/// rel_abs below delta, rel_abs of the inverse above `large`; 0 at 0.
/// Requires delta in (0,1) and large >= 1/delta.
UltraScalar ultra_norm(double r, double delta, double large);

/// {"regime":"finite|infinitesimal|infinite","value":x,"delta":d}; delta is
/// null in the finite regime.
nlohmann::ordered_json to_json(const UltraScalar& s);

struct Inversion {
  double t_tilde = 0.0;
  double mu = 0.0;
};

/// Inversion rule t~/delta = lambda (delta/t), plus the exponent mu with
/// t~/delta = (delta/t)^mu. Requires t > delta and a result below delta.
Inversion invert_to_infinitesimal(double t, double delta, double lambda);

struct AdelicComposite {
  Rational abs;
  PAdicNumber base;
  std::vector<PAdicNumber> units;
};

/// tau = tau_p * prod_{q > p} (1 + tau_q). The unit factors must have
/// absolute value 1 at their own (strictly increasing, > p) primes, so the
/// composite's absolute value is |tau_p|_p.
AdelicComposite adelic_compose(const PAdicNumber& base, std::span<const PAdicNumber> units);

/// Samples t = delta * delta^(-s), phi = phi0 * delta^(k s) over a small grid
/// of s and returns the least-squares slope of ln phi against ln t (= -k).
double constant_to_log_variable_check(double phi0, double k, double delta, std::size_t samples);

}  // namespace scalefree
