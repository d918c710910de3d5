#include "scalefree/nonsmooth_ode.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "scalefree/error.hpp"

namespace scalefree {

namespace {

void pad_to(std::vector<double>& values, std::size_t length, double fill) {
  if (values.size() < length) values.resize(length, fill);
}

std::vector<double> run_recursion(double eta0, const std::vector<double>& alphas,
                                  const std::vector<double>& epsilons, std::size_t levels) {
  std::vector<double> etas;
  etas.reserve(levels + 1);
  etas.push_back(eta0);
  for (std::size_t n = 1; n <= levels; ++n) {
    const double previous = etas.back();
    const double alpha = alphas[n - 1];
    const double next = alpha * (previous * previous - epsilons[n - 1] / alpha);
    if (!(std::abs(next) < 1.0)) {
      throw DomainError("schedule infeasible: |eta_" + std::to_string(n) + "| = " +
                        std::to_string(std::abs(next)) + " is not below 1");
    }
    etas.push_back(next);
  }
  return etas;
}

// -sum_{i<L} log1p(eta_i) + log1p(-eta_L)
double log_branch_of(const std::vector<double>& etas) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < etas.size(); ++i) sum -= std::log1p(etas[i]);
  return sum + std::log1p(-etas.back());
}

std::string format_g12(double value) {
  std::array<char, 32> buffer{};
  std::snprintf(buffer.data(), buffer.size(), "%.12g", value);
  return buffer.data();
}

}  // namespace

RescalingSchedule RescalingSchedule::trivial(double eta0, std::size_t levels) {
  return with_leading(eta0, levels, {}, {});
}

RescalingSchedule RescalingSchedule::with_leading(double eta0, std::size_t levels,
                                                  std::vector<double> alphas,
                                                  std::vector<double> epsilons) {
  pad_to(alphas, levels, 1.0);
  pad_to(epsilons, levels, 0.0);
  RescalingSchedule schedule{std::move(alphas), std::move(epsilons), levels, eta0};
  schedule.validate();
  return schedule;
}

bool RescalingSchedule::is_trivial() const {
  for (std::size_t n = 0; n < levels; ++n) {
    if (alphas[n] != 1.0 || epsilons[n] != 0.0) return false;
  }
  return true;
}

void RescalingSchedule::validate() const {
  if (alphas.size() < levels || epsilons.size() < levels) {
    throw DomainError("schedule shorter than its level count");
  }
  for (std::size_t n = 0; n < levels; ++n) {
    if (!(alphas[n] >= 1.0) || !std::isfinite(alphas[n])) {
      throw DomainError("alpha_" + std::to_string(n + 1) + " must be >= 1");
    }
    if (!(epsilons[n] >= 0.0) || !std::isfinite(epsilons[n])) {
      throw DomainError("epsilon_" + std::to_string(n + 1) + " must be >= 0");
    }
  }
  if (!(std::abs(eta0) < 1.0)) throw DomainError("eta0 must lie in (-1, 1)");
}

IterationTrace iterate_schedule(const RescalingSchedule& schedule) {
  schedule.validate();
  IterationTrace trace;
  trace.etas = run_recursion(schedule.eta0, schedule.alphas, schedule.epsilons, schedule.levels);
  double product = 1.0;
  for (double eta : trace.etas) {
    trace.t_plus.push_back(1.0 + eta);
    product /= 1.0 + eta;
    trace.partial_products.push_back(product);
  }
  const auto at_one = run_recursion(0.0, schedule.alphas, schedule.epsilons, schedule.levels);
  trace.constant = std::exp(-log_branch_of(at_one));
  return trace;
}

double IterationTrace::left_value() const {
  const std::size_t last = levels();
  const double head = last == 0 ? 1.0 : partial_products[last - 1];
  return constant * head * (1.0 - etas[last]);
}

std::string IterationTrace::to_csv() const {
  std::ostringstream out;
  out << "level,eta,t_plus,partial_product\n";
  for (std::size_t n = 0; n < etas.size(); ++n) {
    out << n << ',' << format_g12(etas[n]) << ',' << format_g12(t_plus[n]) << ','
        << format_g12(partial_products[n]) << '\n';
  }
  return out.str();
}

NonsmoothSolution::NonsmoothSolution(std::vector<double> alphas, std::vector<double> epsilons,
                                     std::size_t levels)
    : levels_(levels) {
  // Validation (and padding) goes through the schedule type.
  RescalingSchedule schedule =
      RescalingSchedule::with_leading(0.0, levels, std::move(alphas), std::move(epsilons));
  alphas_ = std::move(schedule.alphas);
  epsilons_ = std::move(schedule.epsilons);
  log_constant_ = -log_branch(0.0);
  constant_ = std::exp(log_constant_);
}

NonsmoothSolution NonsmoothSolution::trivial(std::size_t levels) { return {{}, {}, levels}; }

std::vector<double> NonsmoothSolution::etas_from(double s) const {
  return run_recursion(s, alphas_, epsilons_, levels_);
}

double NonsmoothSolution::log_branch(double s) const { return log_branch_of(etas_from(s)); }

double NonsmoothSolution::excess(double t) const {
  if (!(t > 0.0 && t < 2.0)) throw DomainError("t must lie in (0, 2)");
  const bool product_side = reflected_ ? t > 1.0 : t < 1.0;
  if (!product_side) return 0.0;
  const double s = 1.0 - t;
  return t * std::expm1(log_constant_ + log_branch(s) - std::log1p(-s));
}

double NonsmoothSolution::operator()(double t) const { return t + excess(t); }

NonsmoothSolution NonsmoothSolution::parity() const {
  NonsmoothSolution copy = *this;
  copy.reflected_ = !reflected_;
  return copy;
}

RescalingSchedule NonsmoothSolution::schedule(double eta0) const {
  return RescalingSchedule::with_leading(eta0, levels_, alphas_, epsilons_);
}

IterationTrace NonsmoothSolution::trace(double eta0) const {
  return iterate_schedule(schedule(eta0));
}

double evaluate_solution(const IterationTrace& trace, double t, Side side) {
  if (!(t > 0.0 && t < 2.0)) throw DomainError("t must lie in (0, 2)");
  if (trace.etas.empty()) throw DomainError("empty trace");
  const double eta0 = std::abs(t - 1.0);
  if (std::abs(trace.etas.front() - eta0) > 1e-12) {
    throw DomainError("trace was not computed at eta0 = |t - 1|");
  }
  return side == Side::right ? t : trace.left_value();
}

ParityResult parity_transform(const NonsmoothSolution& solution, double eta_min, double eta_max,
                              std::size_t points) {
  if (points < 1 || !(eta_min > 0.0) || !(eta_max < 1.0) || eta_min > eta_max) {
    throw DomainError("parity grid must satisfy 0 < eta_min <= eta_max < 1");
  }
  ParityResult result{solution.parity(), 0.0};
  for (std::size_t i = 0; i < points; ++i) {
    const double eta =
        points == 1 ? eta_min
                    : eta_min + (eta_max - eta_min) * static_cast<double>(i) /
                                    static_cast<double>(points - 1);
    for (double t : {1.0 - eta, 1.0 + eta}) {
      const double deviation = std::abs(result.reflected.excess(t) - solution.excess(t));
      result.max_deviation = std::max(result.max_deviation, deviation);
    }
  }
  return result;
}

double discontinuity_probe(const std::function<double(double)>& f, int order, double h) {
  if (order < 1 || order > 4) throw DomainError("probe order must lie in [1, 4]");
  if (!(h > 1e-6 && h < 1e-2)) throw DomainError("probe step h must lie in (1e-6, 1e-2)");
  const auto one_sided = [&](double step, double direction) {
    // Binomial finite difference of the given order, stepping away from t = 1.
    double sum = 0.0;
    double binomial = 1.0;
    for (int i = 0; i <= order; ++i) {
      const double sign = ((order - i) % 2 == 0) ? 1.0 : -1.0;
      sum += sign * binomial * f(1.0 + direction * i * step);
      binomial = binomial * (order - i) / (i + 1);
    }
    // A backward difference of odd order carries an extra sign.
    const double orientation = (direction < 0 && order % 2 == 1) ? -1.0 : 1.0;
    return orientation * sum / std::pow(step, order);
  };
  const auto extrapolated = [&](double direction) {
    return 2.0 * one_sided(h / 2.0, direction) - one_sided(h, direction);
  };
  return extrapolated(1.0) - extrapolated(-1.0);
}

double discontinuity_probe(const NonsmoothSolution& solution, int order, double h) {
  return discontinuity_probe([&solution](double t) { return solution.excess(t); }, order, h);
}

ExtendedUnity extended_unity(double eta, const std::map<std::uint64_t, double>& sigmas,
                             const std::vector<std::uint64_t>& window) {
  if (!(eta >= 0.0 && eta < 1.0)) throw DomainError("eta must lie in [0, 1)");
  ExtendedUnity result;
  double log_sum = 0.0;
  double product = 1.0 + eta;
  double previous = INFINITY;
  for (std::uint64_t q : window) {
    const auto found = sigmas.find(q);
    if (found == sigmas.end()) throw DomainError("no sigma for prime " + std::to_string(q));
    const double sigma = found->second;
    if (!(sigma >= 0.0)) throw DomainError("sigma for prime " + std::to_string(q) + " is negative");
    if (sigma > previous) throw DomainError("sigmas must be nonincreasing along the window");
    previous = sigma;
    log_sum += std::log1p(sigma);
    product *= 1.0 + sigma;
    result.sigma_sum += sigma;
  }
  result.value = product;
  result.log_deviation = std::abs(log_sum);
  return result;
}

std::map<std::uint64_t, double> chained_sigmas(double eta, const std::vector<std::uint64_t>& window,
                                               const std::vector<double>& alphas,
                                               const std::vector<double>& epsilons) {
  std::map<std::uint64_t, double> sigmas;
  double previous = eta;
  for (std::size_t j = 0; j < window.size(); ++j) {
    const double alpha = j < alphas.size() ? alphas[j] : 1.0;
    const double epsilon = j < epsilons.size() ? epsilons[j] : 0.0;
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    const double gap = previous - epsilon / alpha;
    const double sigma = alpha * gap * gap;
    sigmas[window[j]] = sigma;
    previous = sigma;
  }
  return sigmas;
}

}  // namespace scalefree
