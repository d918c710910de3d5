#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace scalefree {

/// Residual rescalings (alpha_n, epsilon_n) for levels n = 1..levels and the
/// starting scale eta0. alphas[n-1] and epsilons[n-1] hold level n. Beyond
/// `levels` the iteration continues with alpha = 1, epsilon = 0.
struct RescalingSchedule {
  std::vector<double> alphas;
  std::vector<double> epsilons;
  std::size_t levels = 0;
  double eta0 = 0.0;

  /// alpha = 1, epsilon = 0 at every level.
  static RescalingSchedule trivial(double eta0, std::size_t levels);
  /// Explicit leading values, padded with trivial levels up to `levels`.
  static RescalingSchedule with_leading(double eta0, std::size_t levels, std::vector<double> alphas,
                                        std::vector<double> epsilons);

  double alpha(std::size_t level) const { return alphas.at(level - 1); }
  double epsilon(std::size_t level) const { return epsilons.at(level - 1); }
  bool is_trivial() const;

  /// Throws DomainError on short sequences, alpha < 1, epsilon < 0 or
  /// |eta0| >= 1.
  void validate() const;
};

struct IterationTrace {
  std::vector<double> etas;              // eta_0 .. eta_L
  std::vector<double> t_plus;            // 1 + eta_n
  std::vector<double> partial_products;  // prod_{i<=n} 1 / (1 + eta_i)
  double constant = 1.0;                 // C, fixed by continuity at t = 1

  std::size_t levels() const { return etas.empty() ? 0 : etas.size() - 1; }
  /// C * prod_{i<L} 1/(1+eta_i) * (1 - eta_L): the left branch with the
  /// unperturbed tail beyond level L summed in closed form.
  double left_value() const;
  /// level,eta,t_plus,partial_product rows.
  std::string to_csv() const;
};

/// eta_{n+1} = alpha_{n+1} (eta_n^2 - epsilon_{n+1} / alpha_{n+1}).
///
/// eta_n may become negative near t = 1 when epsilon_{n+1} exceeds
/// alpha_{n+1} eta_n^2; the schedule is rejected only if some |eta_n| >= 1,
/// where 1 + eta_n stops being a positive scale factor.
IterationTrace iterate_schedule(const RescalingSchedule& schedule);

enum class Side { left, right };

/// Iterated solution of t dtau/dt = tau near t = 1.
///
/// One branch is the standard solution tau = t; the other is
/// C * prod 1/(1 + eta_i) with eta_0 = 1 - t. The parity-reflected solution
/// swaps which side carries the product.
class NonsmoothSolution {
 public:
  NonsmoothSolution(std::vector<double> alphas, std::vector<double> epsilons, std::size_t levels);
  static NonsmoothSolution trivial(std::size_t levels);

  /// tau(t) for t in (0, 2).
  double operator()(double t) const;
  /// tau(t) - t, computed without cancellation against t.
  double excess(double t) const;

  double constant() const { return constant_; }
  bool reflected() const { return reflected_; }
  /// The solution under P: t+ <-> t-.
  NonsmoothSolution parity() const;
  /// Trace of the product branch at eta0 = |t - 1|.
  IterationTrace trace(double eta0) const;
  RescalingSchedule schedule(double eta0) const;

 private:
  // -sum_{i<L} log1p(eta_i) + log1p(-eta_L) for eta_0 = s.
  double log_branch(double s) const;
  std::vector<double> etas_from(double s) const;

  std::vector<double> alphas_;
  std::vector<double> epsilons_;
  std::size_t levels_;
  double log_constant_ = 0.0;
  double constant_ = 1.0;
  bool reflected_ = false;
};

/// Value at t from a precomputed trace (eta0 must equal |t - 1|).
double evaluate_solution(const IterationTrace& trace, double t, Side side);

struct ParityResult {
  NonsmoothSolution reflected;
  double max_deviation = 0.0;
};

/// Reflects the solution and measures sup |tau^P - tau| over t = 1 +/- eta
/// for `points` values of eta evenly spaced in [eta_min, eta_max].
ParityResult parity_transform(const NonsmoothSolution& solution, double eta_min = 0.01,
                              double eta_max = 0.1, std::size_t points = 101);

/// Right-minus-left jump of the order-th derivative at t = 1.
///
/// One-sided difference quotients of the given order with steps h and h/2,
/// combined by Richardson extrapolation. Requires 1e-6 < h < 1e-2 and
/// order in [1, 4].
double discontinuity_probe(const std::function<double(double)>& f, int order, double h);
/// Probes the solution's excess over the standard solution; derivatives of
/// order >= 2 are unaffected by subtracting t.
double discontinuity_probe(const NonsmoothSolution& solution, int order, double h = 1e-4);

struct ExtendedUnity {
  double value = 1.0;          // T(eta)
  double log_deviation = 0.0;  // |ln T - ln(1 + eta)|
  double sigma_sum = 0.0;      // bound on log_deviation
};

/// T(eta) = (1 + eta) prod_{q in window} (1 + sigma_q). Every window prime
/// must have a sigma; sigmas must be nonnegative and nonincreasing along the
/// window.
ExtendedUnity extended_unity(double eta, const std::map<std::uint64_t, double>& sigmas,
                             const std::vector<std::uint64_t>& window);

/// sigma_q = alpha_q (eta_prev - epsilon_q / alpha_q)^2 where eta_prev is
/// eta for the first window prime and the preceding prime's sigma after that.
/// Missing alphas/epsilons default to 1 and 0.
std::map<std::uint64_t, double> chained_sigmas(double eta, const std::vector<std::uint64_t>& window,
                                               const std::vector<double>& alphas = {},
                                               const std::vector<double>& epsilons = {});

}  // namespace scalefree
