#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "scalefree/error.hpp"
#include "scalefree/valuation.hpp"

using scalefree::DomainError;
using scalefree::PAdicNumber;
using scalefree::Rational;
using scalefree::Regime;
using scalefree::ValuedInfinitesimal;

TEST(RelAbs, Examples) {
  EXPECT_NEAR(scalefree::rel_abs(0.01, 0.1), 1.0, 1e-15);
  // k + ln(1/lambda) / ln(1/delta) = 0.3 + ln 2 / ln 100
  EXPECT_NEAR(scalefree::rel_abs(0.5 * std::pow(0.01, 1.3), 0.01), 0.450514997831990598, 1e-14);
}

TEST(RelAbs, SameValueInTheLimit) {
  double previous_gap = INFINITY;
  for (int n = 2; n <= 60; n += 2) {
    const double delta = std::pow(10.0, -n);
    const double value = scalefree::rel_abs(0.5 * std::pow(delta, 1.3), delta);
    const double gap = std::abs(value - 0.3);
    EXPECT_LT(gap, previous_gap);
    previous_gap = gap;
  }
  EXPECT_LT(previous_gap, 0.006);
}

TEST(RelAbs, Errors) {
  EXPECT_THROW(scalefree::rel_abs(0.1, 0.1), DomainError);
  EXPECT_THROW(scalefree::rel_abs(0.0, 0.1), DomainError);
  EXPECT_THROW(scalefree::rel_abs(-0.01, 0.1), DomainError);
  EXPECT_THROW(scalefree::rel_abs(0.01, 1.5), DomainError);
}

TEST(RelAbs, StrictlyDecreasingInArgument) {
  const double delta = 1e-3;
  double previous = INFINITY;
  for (int i = 1; i < 200; ++i) {
    const double t = delta * i / 200.0;
    const double value = scalefree::rel_abs(t, delta);
    EXPECT_LT(value, previous);
    previous = value;
  }
}

TEST(UltraNorm, Regimes) {
  auto finite = scalefree::ultra_norm(2.5, 0.01, 100);
  EXPECT_EQ(finite.regime, Regime::finite);
  EXPECT_EQ(finite.value, 2.5);
  EXPECT_FALSE(finite.scale.has_value());

  auto small = scalefree::ultra_norm(0.001, 0.01, 100);
  EXPECT_EQ(small.regime, Regime::infinitesimal);
  EXPECT_NEAR(small.value, 0.5, 1e-15);

  auto big = scalefree::ultra_norm(1000, 0.01, 100);
  EXPECT_EQ(big.regime, Regime::infinite);
  EXPECT_NEAR(big.value, 0.5, 1e-15);

  EXPECT_EQ(scalefree::ultra_norm(0.0, 0.01, 100).value, 0.0);
  EXPECT_THROW(scalefree::ultra_norm(1.0, 0.01, 50), DomainError);
}

TEST(UltraNorm, EuclideanOnTheFiniteBand) {
  for (double r : {0.01, 0.02, 0.5, 1.0, 3.75, 99.0, 100.0, -42.0}) {
    const auto s = scalefree::ultra_norm(r, 0.01, 100);
    EXPECT_EQ(s.regime, Regime::finite) << r;
    EXPECT_EQ(s.value, std::abs(r));
  }
}

TEST(UltraNorm, Json) {
  const auto j = scalefree::to_json(scalefree::ultra_norm(0.001, 0.01, 100));
  EXPECT_EQ(j.dump(), R"({"regime":"infinitesimal","value":0.5,"delta":0.01})");
}

TEST(Inversion, Examples) {
  const auto unit = scalefree::invert_to_infinitesimal(0.02, 0.01, 1.0);
  EXPECT_NEAR(unit.t_tilde, 0.005, 1e-17);
  EXPECT_NEAR(unit.mu, 1.0, 1e-15);

  EXPECT_NEAR(scalefree::invert_to_infinitesimal(3.0, 1.0, 1.0 / 9.0).mu, 3.0, 1e-14);

  const auto near_scale = scalefree::invert_to_infinitesimal(0.01 * (1 + 1e-9), 0.01, 0.5);
  EXPECT_GT(near_scale.mu, 1e8);
}

TEST(Inversion, Errors) {
  EXPECT_THROW(scalefree::invert_to_infinitesimal(0.01, 0.01, 0.5), DomainError);
  EXPECT_THROW(scalefree::invert_to_infinitesimal(0.02, 0.01, 3.0), DomainError);
}

TEST(SymProduct, AddsLimitValues) {
  const auto p = scalefree::sym_product({1, 0.3}, {1, 0.2});
  EXPECT_EQ(p.lambda(), 1.0);
  EXPECT_NEAR(p.k(), 0.5, 1e-16);

  const ValuedInfinitesimal a(0.25, 1.7);
  const auto identity = scalefree::sym_product({1, 0}, a);
  EXPECT_EQ(identity.lambda(), a.lambda());
  EXPECT_EQ(identity.k(), a.k());
}

TEST(SymProduct, FiniteScaleTriangleWitness) {
  const double delta = 1e-4;
  const ValuedInfinitesimal a(1, 0.3), b(1, 0.5);
  const double value = scalefree::rel_abs(a.realize(delta) + b.realize(delta), delta);
  // ln(delta / (delta^1.3 + delta^1.5)) / ln(1/delta), evaluated independently.
  EXPECT_NEAR(value, 0.284026991464155, 1e-12);
  EXPECT_LE(value, std::max(a.value_at(delta), b.value_at(delta)));
}

TEST(ValuedInfinitesimal, RealizationAndCorrection) {
  const ValuedInfinitesimal t(0.5, 0.3);
  EXPECT_EQ(t.limit_value(), 0.3);
  for (double delta : {1e-2, 1e-4, 1e-8}) {
    EXPECT_NEAR(t.value_at(delta), t.k() + t.correction(delta), 1e-12);
    const double realized = t.realize(delta);
    EXPECT_GT(realized, 0.0);
    EXPECT_LT(realized, delta);
  }
  EXPECT_THROW(ValuedInfinitesimal(0.0, 1.0), DomainError);
  EXPECT_THROW(ValuedInfinitesimal(1.0, -0.1), DomainError);
}

TEST(ValuedInfinitesimal, SemiNormProperties) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> lambda(0.05, 1.0);
  std::uniform_real_distribution<double> k(0.01, 3.0);
  const double delta = 1e-3;
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const ValuedInfinitesimal a(lambda(rng), k(rng)), b(lambda(rng), k(rng));
    const double ta = a.realize(delta), tb = b.realize(delta);
    if (!(ta + tb < delta)) continue;
    ++checked;
    const double va = scalefree::infinitesimal_value(ta, delta);
    const double vb = scalefree::infinitesimal_value(tb, delta);
    ASSERT_GT(va, 0.0);
    ASSERT_EQ(scalefree::infinitesimal_value(-ta, delta), va);
    ASSERT_LE(scalefree::infinitesimal_value(ta + tb, delta), std::max(va, vb));
  }
  EXPECT_GT(checked, 9000);
  EXPECT_EQ(scalefree::infinitesimal_value(0.0, delta), 0.0);
}

TEST(ValuedInfinitesimal, ProductRuleIsExact) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> k(0.0, 4.0);
  for (int i = 0; i < 1000; ++i) {
    const ValuedInfinitesimal a(1.0, k(rng)), b(0.5, k(rng));
    EXPECT_EQ(scalefree::sym_product(a, b).limit_value(), a.limit_value() + b.limit_value());
  }
}

TEST(Adelic, UnitsLeaveAbsoluteValueUnchanged) {
  const auto base = PAdicNumber::from_integer(2, 6);  // |6|_2 = 1/2
  std::vector<PAdicNumber> units = {PAdicNumber::from_integer(3, 4), PAdicNumber::from_integer(5, 6)};
  const auto composite = scalefree::adelic_compose(base, units);
  EXPECT_EQ(composite.abs, Rational(1, 2));
  EXPECT_EQ(composite.units.size(), 2u);

  EXPECT_EQ(scalefree::adelic_compose(base, {}).abs, scalefree::padic_abs(base));

  // Appending or truncating units never changes the value.
  const std::uint32_t more[] = {7, 11, 13, 17, 19, 23};
  for (std::uint32_t q : more) {
    units.push_back(PAdicNumber::from_integer(q, 1 + q));
    EXPECT_EQ(scalefree::adelic_compose(base, units).abs, Rational(1, 2));
  }
  for (std::size_t cut = 0; cut <= units.size(); ++cut) {
    EXPECT_EQ(scalefree::adelic_compose(base, std::span(units).first(cut)).abs, Rational(1, 2));
  }
}

TEST(Adelic, Errors) {
  const auto base = PAdicNumber::from_integer(2, 6);
  std::vector<PAdicNumber> not_unit = {PAdicNumber::from_integer(3, 3)};
  EXPECT_THROW(scalefree::adelic_compose(base, not_unit), DomainError);
  std::vector<PAdicNumber> unordered = {PAdicNumber::from_integer(5, 6), PAdicNumber::from_integer(3, 4)};
  EXPECT_THROW(scalefree::adelic_compose(base, unordered), DomainError);
  std::vector<PAdicNumber> same_prime = {PAdicNumber::from_integer(2, 3)};
  EXPECT_THROW(scalefree::adelic_compose(base, same_prime), DomainError);
}

TEST(ConstantToVariable, SlopeIsMinusK) {
  EXPECT_NEAR(scalefree::constant_to_log_variable_check(1.0, 2.0, 0.01, 11), -2.0, 1e-6);
  EXPECT_NEAR(scalefree::constant_to_log_variable_check(1.0, 0.0, 0.01, 11), 0.0, 1e-12);
  const double base = scalefree::constant_to_log_variable_check(1.0, 1.5, 0.01, 11);
  EXPECT_NEAR(scalefree::constant_to_log_variable_check(10.0, 1.5, 0.01, 11), base, 1e-12);
  for (int k = -3; k <= 3; ++k) {
    EXPECT_NEAR(scalefree::constant_to_log_variable_check(2.0, k, 1e-3, 7), -k, 1e-6);
  }
  EXPECT_THROW(scalefree::constant_to_log_variable_check(1.0, 1.0, 0.01, 2), DomainError);
  EXPECT_THROW(scalefree::constant_to_log_variable_check(1.0, 1.0, 1.0, 5), DomainError);
}
