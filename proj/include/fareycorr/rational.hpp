#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace fareycorr {

using Rational = boost::rational<std::int64_t>;

/// Parses "3", "0.25", ".5", "7/20" into an exact rational. Decimal strings
/// get denominator 10^k. Negative values are accepted; callers enforce signs.
/// Throws std::invalid_argument on malformed input or if the value does not
/// fit in 64-bit numerator/denominator.
Rational parse_rational(std::string_view text);

/// Renders r with exactly `places` digits after the point. Requires the
/// denominator of r to divide 10^places.
std::string to_decimal_string(const Rational& r, int places);

/// Shortest exact text: a terminating decimal when the denominator divides
/// some 10^k (k <= 18), otherwise "p/q".
std::string format_rational(const Rational& r);

/// Number of digits after the decimal point in a decimal literal ("0.25" -> 2).
int decimal_places(std::string_view text);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace fareycorr
