#include "scalefree/padic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "scalefree/error.hpp"

namespace scalefree {

namespace {

constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 31) - 1;

void check_prime(std::uint64_t p) {
  if (p > kMaxPrime) throw DomainError("prime " + std::to_string(p) + " exceeds 2^31 - 1");
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
}

void check_same_prime(const PAdicNumber& a, const PAdicNumber& b) {
  if (a.prime() != b.prime()) {
    throw DomainError("prime mismatch: " + std::to_string(a.prime()) + " vs " +
                      std::to_string(b.prime()));
  }
}

void trim_trailing_zeros(std::vector<std::uint32_t>& digits) {
  while (!digits.empty() && digits.back() == 0) digits.pop_back();
}

// Modular inverse of d modulo prime p, d in [1, p).
std::uint64_t inverse_mod(std::uint64_t d, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(d);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PAdicNumber PAdicNumber::zero(std::uint32_t p, std::size_t precision) {
  check_prime(p);
  return PAdicNumber(p, kInfiniteValuation, {}, precision);
}

PAdicNumber PAdicNumber::canonical(std::uint32_t p, long origin, std::vector<std::uint32_t> digits,
                                   std::size_t precision) {
  auto first = std::find_if(digits.begin(), digits.end(), [](std::uint32_t d) { return d != 0; });
  if (first == digits.end()) return PAdicNumber(p, kInfiniteValuation, {}, precision);
  const auto skipped = static_cast<std::size_t>(first - digits.begin());
  const long r = origin + static_cast<long>(skipped);
  if (r >= kInfiniteValuation || r <= -kInfiniteValuation) throw DomainError("valuation overflow");
  digits.erase(digits.begin(), first);
  const std::size_t kept = precision > skipped ? precision - skipped : 0;
  if (kept == 0) return PAdicNumber(p, kInfiniteValuation, {}, precision);
  if (digits.size() > kept) digits.resize(kept);
  trim_trailing_zeros(digits);
  return PAdicNumber(p, static_cast<int>(r), std::move(digits), kept);
}

PAdicNumber PAdicNumber::from_digits(std::uint32_t p, int r, std::vector<std::uint32_t> digits,
                                     std::size_t precision) {
  check_prime(p);
  if (precision == 0) throw DomainError("precision must be at least one digit");
  for (std::uint32_t d : digits) {
    if (d >= p) {
      throw DomainError("digit " + std::to_string(d) + " out of range [0, " + std::to_string(p) +
                        ")");
    }
  }
  // Input digits are exact, so absorbing leading zeros keeps the full precision.
  auto first = std::find_if(digits.begin(), digits.end(), [](std::uint32_t d) { return d != 0; });
  const long skipped = first - digits.begin();
  return canonical(p, static_cast<long>(r) + skipped,
                   std::vector<std::uint32_t>(first, digits.end()), precision);
}

PAdicNumber PAdicNumber::from_integer(std::uint32_t p, std::int64_t n, std::size_t precision) {
  check_prime(p);
  const bool negative = n < 0;
  std::uint64_t magnitude = negative ? ~static_cast<std::uint64_t>(n) + 1 : static_cast<std::uint64_t>(n);
  std::vector<std::uint32_t> digits;
  while (magnitude != 0) {
    digits.push_back(static_cast<std::uint32_t>(magnitude % p));
    magnitude /= p;
  }
  PAdicNumber value = from_digits(p, 0, std::move(digits), precision);
  return negative ? -value : value;
}

std::uint32_t PAdicNumber::digit_at(long position) const {
  if (is_zero() || position < r_) return 0;
  const auto index = static_cast<std::size_t>(position - r_);
  return index < digits_.size() ? digits_[index] : 0;
}

long PAdicNumber::absolute_precision() const {
  if (is_zero()) return std::numeric_limits<long>::max();
  return static_cast<long>(r_) + static_cast<long>(precision_);
}

std::string PAdicNumber::to_string() const {
  std::ostringstream out;
  if (is_zero()) {
    out << "0 (p=" << p_ << ")";
    return out.str();
  }
  out << p_ << "^" << r_ << " * [";
  for (std::size_t i = 0; i < digits_.size(); ++i) out << (i ? "," : "") << digits_[i];
  out << "]";
  return out.str();
}

PAdicNumber operator+(const PAdicNumber& a, const PAdicNumber& b) {
  check_same_prime(a, b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::uint64_t p = a.p_;
  const long origin = std::min(a.r_, b.r_);
  const long top = std::min(a.absolute_precision(), b.absolute_precision());
  const auto length = static_cast<std::size_t>(top - origin);

  std::vector<std::uint32_t> sum(length, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < length; ++i) {
    const long position = origin + static_cast<long>(i);
    const std::uint64_t total = carry + a.digit_at(position) + b.digit_at(position);
    sum[i] = static_cast<std::uint32_t>(total % p);
    carry = total / p;
  }
  return PAdicNumber::canonical(a.p_, origin, std::move(sum), length);
}

PAdicNumber operator-(const PAdicNumber& a) {
  if (a.is_zero()) return a;
  // p^N - u: complement every digit, then add one at the bottom. Since the
  // leading digit is nonzero the +1 never carries past it.
  const std::uint32_t p = a.p_;
  std::vector<std::uint32_t> digits(a.precision_, 0);
  std::copy(a.digits_.begin(), a.digits_.end(), digits.begin());
  digits[0] = p - digits[0];
  for (std::size_t i = 1; i < digits.size(); ++i) digits[i] = p - 1 - digits[i];
  trim_trailing_zeros(digits);
  return PAdicNumber(p, a.r_, std::move(digits), a.precision_);
}

PAdicNumber operator-(const PAdicNumber& a, const PAdicNumber& b) { return a + (-b); }

PAdicNumber operator*(const PAdicNumber& a, const PAdicNumber& b) {
  check_same_prime(a, b);
  const std::size_t precision = std::min(a.precision_, b.precision_);
  if (a.is_zero() || b.is_zero()) return PAdicNumber::zero(a.p_, precision);
  const long r = static_cast<long>(a.r_) + static_cast<long>(b.r_);
  if (r >= PAdicNumber::kInfiniteValuation || r <= -PAdicNumber::kInfiniteValuation) {
    throw DomainError("valuation overflow");
  }
  const std::uint64_t p = a.p_;
  std::vector<std::uint64_t> acc(precision, 0);
  for (std::size_t i = 0; i < a.digits_.size() && i < precision; ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; i + j < precision; ++j) {
      const std::uint64_t bj = j < b.digits_.size() ? b.digits_[j] : 0;
      const std::uint64_t total = acc[i + j] + a.digits_[i] * bj + carry;
      acc[i + j] = total % p;
      carry = total / p;
    }
  }
  std::vector<std::uint32_t> digits(acc.begin(), acc.end());
  trim_trailing_zeros(digits);
  return PAdicNumber(a.p_, static_cast<int>(r), std::move(digits), precision);
}

Rational padic_abs(const PAdicNumber& a) {
  if (a.is_zero()) return Rational(0);
  return prime_power(a.prime(), -static_cast<long>(a.valuation()));
}

PAdicNumber normalize_leading_digit(const PAdicNumber& unit) {
  if (unit.is_zero()) throw DomainError("zero has no leading digit");
  const std::uint64_t p = unit.prime();
  const std::uint64_t d0 = unit.digits()[0];
  if (d0 == 1) return unit;
  const std::int64_t d = static_cast<std::int64_t>(d0);
  const std::int64_t ip = static_cast<std::int64_t>(p);
  const std::uint64_t inv = inverse_mod(d0, p);
  const std::size_t n = unit.precision();

  // Digit-serial exact division by d modulo p^n.
  std::vector<std::int64_t> work(n + 1, 0);
  for (std::size_t i = 0; i < n && i < unit.digits().size(); ++i) work[i] = unit.digits()[i];
  std::vector<std::uint32_t> quotient(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t residue = ((work[i] % ip) + ip) % ip;
    const auto q = static_cast<std::int64_t>((static_cast<std::uint64_t>(residue) * inv) % p);
    quotient[i] = static_cast<std::uint32_t>(q);
    const std::int64_t remainder = work[i] - q * d;  // divisible by p
    work[i + 1] += remainder / ip;
  }
  return PAdicNumber::from_digits(unit.prime(), unit.valuation(), std::move(quotient), n);
}

double monna_map(const PAdicNumber& a) {
  if (a.is_zero()) throw DomainError("the Monna map is undefined at zero");
  const auto leading = static_cast<double>(a.digits()[0]);
  const PAdicNumber normalized = normalize_leading_digit(a);
  const double p = normalized.prime();
  const double weight = 1.0 / (p * p);

  // Horner from the highest stored digit: tail = sum_{i>=1} a_i w^i.
  const auto digits = normalized.digits();
  double tail = 0.0;
  for (std::size_t i = digits.size(); i-- > 1;) tail = (tail + digits[i]) * weight;
  return leading * std::pow(p, -static_cast<double>(a.valuation())) * (1.0 + tail);
}

}  // namespace scalefree
