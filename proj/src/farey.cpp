#include "fareycorr/farey.hpp"

#include <charconv>
#include <numeric>

#include "fareycorr/ntheory.hpp"

namespace fareycorr::farey {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed constraint '" + std::string(whole) + "'");
  }
  return v;
}

// a/q compared to r = n/d (d > 0), exactly.
int compare(std::int64_t a, std::int64_t q, const Rational& r) {
  const __int128 lhs = static_cast<__int128>(a) * r.denominator();
  const __int128 rhs = static_cast<__int128>(r.numerator()) * q;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace

void FareySpec::validate() const {
  if (Q < 1) {
    throw SpecError(SpecError::Kind::BadOrder, "Q must be >= 1, got " + std::to_string(Q));
  }
  if (Q > (std::int64_t{1} << 30)) {
    throw SpecError(SpecError::Kind::BadOrder, "Q too large");
  }
  if (const auto* c = std::get_if<CoprimeTo>(&constraint)) {
    if (c->m < 1) {
      throw SpecError(SpecError::Kind::ZeroModulus, "modulus m must be >= 1");
    }
  } else if (const auto* r = std::get_if<ResidueClass>(&constraint)) {
    if (r->m < 1) {
      throw SpecError(SpecError::Kind::ZeroModulus, "modulus m must be >= 1");
    }
    if (r->b < 1 || r->b > r->m) {
      throw SpecError(SpecError::Kind::ResidueOutOfRange,
                      "residue b must satisfy 1 <= b <= m, got b=" + std::to_string(r->b));
    }
    if (std::gcd(r->b, r->m) != 1) {
      throw SpecError(SpecError::Kind::ResidueNotCoprime,
                      "residue class requires (b,m)=1, got gcd(" + std::to_string(r->b) + "," +
                          std::to_string(r->m) + ")=" + std::to_string(std::gcd(r->b, r->m)));
    }
  }
  if (window) {
    if (window->alpha < 0 || window->beta > 1 || !(window->alpha < window->beta)) {
      throw SpecError(SpecError::Kind::BadWindow, "window must satisfy 0 <= alpha < beta <= 1");
    }
  }
}

bool FareySpec::admits_denominator(std::int64_t q) const {
  return std::visit(
      [q](const auto& c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, AllDenominators>) {
          return true;
        } else if constexpr (std::is_same_v<T, CoprimeTo>) {
          return std::gcd(q, c.m) == 1;
        } else {
          return q % c.m == c.b % c.m;
        }
      },
      constraint);
}

bool FareySpec::in_window(const Fraction& f) const {
  if (!window) {
    return true;
  }
  return compare(f.num, f.den, window->alpha) > 0 && compare(f.num, f.den, window->beta) <= 0;
}

Constraint parse_constraint(std::string_view text) {
  if (text == "all") {
    return AllDenominators{};
  }
  if (text.starts_with("coprime:")) {
    const std::int64_t m = parse_int(text.substr(8), text);
    return CoprimeTo{m};
  }
  if (text.starts_with("residue:")) {
    auto body = text.substr(8);
    auto comma = body.find(',');
    if (comma == std::string_view::npos) {
      throw std::invalid_argument("residue constraint needs 'residue:m,b'");
    }
    return ResidueClass{parse_int(body.substr(0, comma), text), parse_int(body.substr(comma + 1), text)};
  }
  throw std::invalid_argument("unknown constraint '" + std::string(text) +
                              "' (expected all, coprime:m or residue:m,b)");
}

std::string describe(const Constraint& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AllDenominators>) {
          return "all";
        } else if constexpr (std::is_same_v<T, CoprimeTo>) {
          return "coprime:" + std::to_string(v.m);
        } else {
          return "residue:" + std::to_string(v.m) + "," + std::to_string(v.b);
        }
      },
      c);
}

std::int64_t modulus(const Constraint& c) {
  if (const auto* p = std::get_if<CoprimeTo>(&c)) {
    return p->m;
  }
  if (const auto* p = std::get_if<ResidueClass>(&c)) {
    return p->m;
  }
  return 1;
}

FareyStream::FareyStream(FareySpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  // Seed 0/1, 1/Q; the seed 0/1 is never emitted.
  cur_den_ = spec_.Q;
}

std::optional<Fraction> FareyStream::next() {
  while (!done_) {
    const Fraction f{static_cast<std::uint32_t>(cur_num_), static_cast<std::uint32_t>(cur_den_)};
    if (cur_num_ == cur_den_) {
      done_ = true;
    } else {
      const std::int64_t k = (spec_.Q + prev_den_) / cur_den_;
      const std::int64_t next_num = k * cur_num_ - prev_num_;
      const std::int64_t next_den = k * cur_den_ - prev_den_;
      prev_num_ = cur_num_;
      prev_den_ = cur_den_;
      cur_num_ = next_num;
      cur_den_ = next_den;
    }
    ++steps_;
    if (spec_.window && compare(f.num, f.den, spec_.window->beta) > 0) {
      done_ = true;
      break;
    }
    if (spec_.admits_denominator(f.den) && spec_.in_window(f)) {
      return f;
    }
  }
  return std::nullopt;
}

std::uint64_t count(const FareySpec& spec) {
  spec.validate();
  if (spec.window && !spec.window->is_full()) {
    throw SpecError(SpecError::Kind::BadWindow, "count() takes no window; use count_in_window()");
  }
  const ntheory::SieveTables sieve(spec.Q);
  std::uint64_t total = 0;
  for (std::int64_t q = 1; q <= spec.Q; ++q) {
    if (spec.admits_denominator(q)) {
      total += static_cast<std::uint64_t>(sieve.phi(q));
    }
  }
  return total;
}

std::uint64_t count_in_window(const FareySpec& spec) {
  if (!spec.window || spec.window->is_full()) {
    FareySpec whole = spec;
    whole.window.reset();
    return count(whole);
  }
  std::uint64_t n = 0;
  for_each_fraction(spec, [&n](const Fraction&) { ++n; });
  return n;
}

double expected_count(const FareySpec& spec) {
  spec.validate();
  const std::int64_t m = modulus(spec.constraint);
  const double q = static_cast<double>(spec.Q);
  double main = ntheory::constant_C(m) * q * q / 2.0;
  if (std::holds_alternative<ResidueClass>(spec.constraint)) {
    main /= static_cast<double>(ntheory::totient(m));
  }
  return main;
}

std::vector<Fraction> materialize(const FareySpec& spec, std::uint64_t cap) {
  FareySpec whole = spec;
  whole.window.reset();
  const std::uint64_t upper = count(whole);
  if (upper > cap && (!spec.window || spec.window->is_full())) {
    throw ResourceCapError("point set has " + std::to_string(upper) + " elements, cap is " +
                           std::to_string(cap));
  }
  std::vector<Fraction> points;
  points.reserve(static_cast<std::size_t>(std::min(upper, cap)));
  FareyStream stream(spec);
  while (auto f = stream.next()) {
    if (points.size() == cap) {
      throw ResourceCapError("windowed point set exceeds cap of " + std::to_string(cap));
    }
    points.push_back(*f);
  }
  return points;
}

}  // namespace fareycorr::farey
