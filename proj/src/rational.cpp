#include "fareycorr/rational.hpp"

#include <limits>
#include <stdexcept>

namespace fareycorr {

namespace {

std::int64_t parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    return 0;
  }
  if (digits.size() > 18) {
    throw std::invalid_argument("too many digits in rational '" + std::string(whole) + "'");
  }
  std::int64_t v = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) {
    throw std::invalid_argument("empty rational");
  }

  Rational r;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (num.empty() || den.empty()) {
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
    const std::int64_t d = parse_digits(den, whole);
    if (d == 0) {
      throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
    }
    r = Rational(parse_digits(num, whole), d);
  } else {
    auto dot = text.find('.');
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part =
        dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) {
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
    if (int_part.size() + frac_part.size() > 18) {
      throw std::invalid_argument("too many digits in rational '" + std::string(whole) + "'");
    }
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) {
      scale *= 10;
    }
    const std::int64_t ip = parse_digits(int_part, whole);
    const std::int64_t fp = parse_digits(frac_part, whole);
    r = Rational(ip * scale + fp, scale);
  }
  return negative ? -r : r;
}

int decimal_places(std::string_view text) {
  auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    return 0;
  }
  return static_cast<int>(text.size() - dot - 1);
}

std::string to_decimal_string(const Rational& r, int places) {
  std::int64_t scale = 1;
  for (int i = 0; i < places; ++i) {
    scale *= 10;
  }
  if (scale % r.denominator() != 0) {
    throw std::invalid_argument("rational has no exact decimal form at requested precision");
  }
  std::int64_t scaled = r.numerator() * (scale / r.denominator());
  std::string sign;
  if (scaled < 0) {
    sign = "-";
    scaled = -scaled;
  }
  std::string ip = std::to_string(scaled / scale);
  if (places == 0) {
    return sign + ip;
  }
  std::string fp = std::to_string(scaled % scale);
  fp.insert(0, static_cast<std::size_t>(places) - fp.size(), '0');
  return sign + ip + "." + fp;
}

std::string format_rational(const Rational& r) {
  std::int64_t scale = 1;
  for (int places = 0; places <= 18; ++places) {
    if (scale % r.denominator() == 0) {
      return to_decimal_string(r, places);
    }
    if (places < 18) {
      scale *= 10;
    }
  }
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace fareycorr
