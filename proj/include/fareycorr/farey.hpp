#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fareycorr/rational.hpp"

namespace fareycorr::farey {

/// A reduced fraction a/q with 0 < a <= q.
struct Fraction {
  std::uint32_t num = 0;
  std::uint32_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    return static_cast<std::uint64_t>(a.num) * b.den <=> static_cast<std::uint64_t>(b.num) * a.den;
  }
};

struct AllDenominators {
  friend bool operator==(const AllDenominators&, const AllDenominators&) = default;
};
/// Denominators q with gcd(q, m) = 1.
struct CoprimeTo {
  std::int64_t m = 1;
  friend bool operator==(const CoprimeTo&, const CoprimeTo&) = default;
};
/// Denominators q = b (mod m), gcd(b, m) = 1, 1 <= b <= m.
struct ResidueClass {
  std::int64_t m = 1;
  std::int64_t b = 1;
  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

using Constraint = std::variant<AllDenominators, CoprimeTo, ResidueClass>;

/// Half-open window (alpha, beta] with 0 <= alpha < beta <= 1.
struct Window {
  Rational alpha{0};
  Rational beta{1};
  bool is_full() const { return alpha == Rational(0) && beta == Rational(1); }
};

class SpecError : public std::invalid_argument {
 public:
  enum class Kind { BadOrder, ZeroModulus, ResidueNotCoprime, ResidueOutOfRange, BadWindow };
  SpecError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class ResourceCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FareySpec {
  std::int64_t Q = 1;
  Constraint constraint = AllDenominators{};
  std::optional<Window> window;

  /// Throws SpecError describing the first violated requirement.
  void validate() const;
  bool admits_denominator(std::int64_t q) const;
  /// Exact test alpha < f <= beta; always true without a window.
  bool in_window(const Fraction& f) const;
};

/// "all", "coprime:m", "residue:m,b". Throws SpecError/std::invalid_argument.
Constraint parse_constraint(std::string_view text);
std::string describe(const Constraint& c);

/// Modulus of the constraint (1 for AllDenominators).
std::int64_t modulus(const Constraint& c);

/// Increasing enumeration of a Farey set via the next-term recurrence on the
/// full sequence F_Q, filtered by constraint and window. O(1) state.
class FareyStream {
 public:
  explicit FareyStream(FareySpec spec);

  std::optional<Fraction> next();

  /// Number of full-sequence steps taken so far (filtered or not).
  std::uint64_t steps() const { return steps_; }

 private:
  FareySpec spec_;
  // Two most recent unfiltered terms; cur_ is the next candidate to emit.
  std::int64_t prev_num_ = 0, prev_den_ = 1;
  std::int64_t cur_num_ = 1, cur_den_ = 1;
  bool done_ = false;
  std::uint64_t steps_ = 0;
};

template <typename Fn>
void for_each_fraction(const FareySpec& spec, Fn&& fn) {
  FareyStream stream(spec);
  while (auto f = stream.next()) {
    fn(*f);
  }
}

/// Exact cardinality of the set ignoring any window, sum of phi(q) over
/// admitted q <= Q. Throws SpecError if a non-full window is present.
std::uint64_t count(const FareySpec& spec);

/// Exact cardinality of the set intersected with the spec's window.
std::uint64_t count_in_window(const FareySpec& spec);

/// Leading-order cardinality: C_m Q^2 / 2, divided by phi(m) for residue classes.
double expected_count(const FareySpec& spec);

/// Streams the spec into memory. Throws ResourceCapError if the set has more
/// than `cap` points.
std::vector<Fraction> materialize(const FareySpec& spec, std::uint64_t cap);

}  // namespace fareycorr::farey
