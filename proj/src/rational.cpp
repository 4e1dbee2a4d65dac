#include "iknap/rational.hpp"

#include <cctype>

namespace iknap {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, const char* what) {
  detail::require(all_digits(s), what);
  // Leading zeros would flip the big-integer constructor into octal mode.
  std::size_t first = s.find_first_not_of('0');
  if (first == std::string_view::npos) return Integer(0);
  return Integer(std::string(s.substr(first)));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const char* bad = "malformed rational literal";
  detail::require(!text.empty(), bad);
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  detail::require(!text.empty(), bad);

  Integer num, den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = parse_integer(text.substr(0, slash), bad);
    den = parse_integer(text.substr(slash + 1), bad);
    detail::require(den != 0, "rational literal with zero denominator");
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    detail::require(!whole.empty() || !frac.empty(), bad);
    num = whole.empty() ? Integer(0) : parse_integer(whole, bad);
    den = 1;
    if (!frac.empty()) {
      Integer scale = 1;
      for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
      num = num * scale + parse_integer(frac, bad);
      den = scale;
    }
  } else {
    num = parse_integer(text, bad);
    den = 1;
  }
  if (negative) num = -num;
  // The two-argument constructor canonicalizes; the string one does not.
  return Rational(num, den);
}

std::string to_fraction_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) {
    s += '/';
    s += denominator(q).str();
  }
  return s;
}

std::string to_decimal_string(const Rational& q, int digits) {
  detail::require(digits >= 0, "digits must be nonnegative");
  Integer num = numerator(q);
  Integer den = denominator(q);
  bool negative = num < 0;
  if (negative) num = -num;
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // Round half away from zero at the last kept digit.
  Integer scaled = (num * scale * 2 + den) / (den * 2);
  Integer whole = scaled / scale;
  Integer frac = scaled % scale;
  std::string s = whole.str();
  if (digits > 0) {
    std::string f = frac.str();
    s += '.';
    s += std::string(static_cast<size_t>(digits) - f.size(), '0');
    s += f;
  }
  if (negative && scaled != 0) s.insert(s.begin(), '-');
  return s;
}

Rational pow_rational(const Rational& base, long e) {
  if (e < 0) {
    detail::require(base != 0, "zero base with negative exponent");
    return pow_rational(Rational(1) / base, -e);
  }
  Rational result(1);
  Rational factor = base;
  unsigned long n = static_cast<unsigned long>(e);
  while (n > 0) {
    if (n & 1) result *= factor;
    factor *= factor;
    n >>= 1;
  }
  return result;
}

Integer floor_rational(const Rational& q) {
  Integer n = numerator(q);
  Integer d = denominator(q);
  Integer quot = n / d;
  if (n % d != 0 && n < 0) --quot;
  return quot;
}

Integer ceil_rational(const Rational& q) {
  Integer n = numerator(q);
  Integer d = denominator(q);
  Integer quot = n / d;
  if (n % d != 0 && n > 0) ++quot;
  return quot;
}

long ceil_log(const Rational& base, const Rational& target) {
  detail::require(base > 1, "log base must exceed 1");
  detail::require(target >= 1, "log target must be at least 1");
  long m = 0;
  Rational power(1);
  while (power < target) {
    power *= base;
    ++m;
  }
  return m;
}

long floor_log(const Rational& base, const Rational& target) {
  detail::require(base > 1, "log base must exceed 1");
  detail::require(target >= 1, "log target must be at least 1");
  long m = 0;
  Rational power = base;
  while (power <= target) {
    power *= base;
    ++m;
  }
  return m;
}

}  // namespace iknap
