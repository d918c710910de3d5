#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace scalefree {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact p^exponent for any integer exponent (negative gives 1/p^|e|).
inline Rational prime_power(std::uint32_t p, long exponent) {
  BigInt base = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) return Rational(base);
  return Rational(BigInt(1), base);
}

}  // namespace scalefree
