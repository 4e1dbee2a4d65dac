#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace iknap {

// All solver arithmetic is exact. Rational is always kept in canonical form
// (reduced fraction, positive denominator); Integer is arbitrary precision.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses "a/b", an integer literal, or a decimal literal ("0.125") into an
/// exact Rational. Throws std::invalid_argument on malformed input or zero
/// denominator.
Rational parse_rational(std::string_view text);

/// Renders as "a/b", or just "a" when the denominator is 1.
std::string to_fraction_string(const Rational& q);

/// Fixed-point decimal rendering with the given number of fraction digits,
/// rounded half away from zero. Exact long division; no floating point.
std::string to_decimal_string(const Rational& q, int digits = 6);

/// base^e for any integer exponent (negative exponents invert; base must be
/// nonzero when e < 0).
Rational pow_rational(const Rational& base, long e);

Integer floor_rational(const Rational& q);
Integer ceil_rational(const Rational& q);

/// Smallest integer m >= 0 with base^m >= target. Requires base > 1 and
/// target >= 1. Equals ceil(log_base(target)).
long ceil_log(const Rational& base, const Rational& target);

/// Largest integer m >= 0 with base^m <= target. Requires base > 1 and
/// target >= 1. Equals floor(log_base(target)).
long floor_log(const Rational& base, const Rational& target);

namespace detail {

inline void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

// Internal-consistency checks; a failure indicates a bug, not bad input.
inline void check(bool condition, const char* message) {
  if (!condition) throw std::logic_error(message);
}

}  // namespace detail

}  // namespace iknap
