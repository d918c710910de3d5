#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "scalefree/rational.hpp"

namespace scalefree {

bool is_prime(std::uint64_t n);

/// Bounded-precision p-adic number p^r * (d0 + d1 p + d2 p^2 + ...).
///
/// Canonical form: nonzero values have digits[0] != 0 and no trailing zero
/// digits; the number of significant digits known is `precision()`, so the
/// value is determined modulo p^(r + precision). Zero carries the valuation
/// sentinel kInfiniteValuation and an empty digit sequence.
///
/// Arithmetic truncates to the common known precision; it never rounds.
class PAdicNumber {
 public:
  static constexpr int kInfiniteValuation = std::numeric_limits<int>::max();
  static constexpr std::size_t kDefaultPrecision = 32;

  /// Builds the canonical value p^r * sum(digits[i] p^i). Leading zero digits
  /// are absorbed into the valuation; digits beyond `precision` are dropped.
  static PAdicNumber from_digits(std::uint32_t p, int r, std::vector<std::uint32_t> digits,
                                 std::size_t precision = kDefaultPrecision);
  static PAdicNumber from_integer(std::uint32_t p, std::int64_t n,
                                  std::size_t precision = kDefaultPrecision);
  static PAdicNumber zero(std::uint32_t p, std::size_t precision = kDefaultPrecision);

  std::uint32_t prime() const { return p_; }
  int valuation() const { return r_; }
  std::span<const std::uint32_t> digits() const { return digits_; }
  std::size_t precision() const { return precision_; }
  bool is_zero() const { return r_ == kInfiniteValuation; }
  bool is_unit() const { return r_ == 0; }

  /// Coefficient of p^position in the expansion (0 outside the stored digits).
  std::uint32_t digit_at(long position) const;

  /// Absolute precision r + N: the value is known modulo p^(r + N).
  /// Zero reports the largest representable bound.
  long absolute_precision() const;

  std::string to_string() const;

  friend bool operator==(const PAdicNumber&, const PAdicNumber&) = default;

 private:
  PAdicNumber(std::uint32_t p, int r, std::vector<std::uint32_t> digits, std::size_t precision)
      : p_(p), r_(r), digits_(std::move(digits)), precision_(precision) {}

  // Canonicalizes a digit run starting at absolute position `origin`.
  static PAdicNumber canonical(std::uint32_t p, long origin, std::vector<std::uint32_t> digits,
                               std::size_t precision);

  friend PAdicNumber operator+(const PAdicNumber&, const PAdicNumber&);
  friend PAdicNumber operator-(const PAdicNumber&);
  friend PAdicNumber operator*(const PAdicNumber&, const PAdicNumber&);

  std::uint32_t p_;
  int r_;
  std::vector<std::uint32_t> digits_;
  std::size_t precision_;
};

PAdicNumber operator+(const PAdicNumber& a, const PAdicNumber& b);
PAdicNumber operator-(const PAdicNumber& a);
PAdicNumber operator-(const PAdicNumber& a, const PAdicNumber& b);
PAdicNumber operator*(const PAdicNumber& a, const PAdicNumber& b);

/// |a|_p = p^(-r) as an exact rational; |0|_p = 0.
Rational padic_abs(const PAdicNumber& a);

/// Divides a unit by its own leading digit, giving a unit with leading digit 1.
PAdicNumber normalize_leading_digit(const PAdicNumber& unit);

/// Monna map p^r (1 + sum_{i>=1} a_i p^i)  ->  p^(-r) (1 + sum_{i>=1} a_i p^(-2i)).
///
/// Values whose leading digit d0 is not 1 are written as d0 * (1 + sum a'_i p^i)
/// and mapped to d0 * p^(-r) (1 + sum a'_i p^(-2i)); the map stays injective on
/// all canonical values. Throws DomainError for zero.
double monna_map(const PAdicNumber& a);

}  // namespace scalefree
