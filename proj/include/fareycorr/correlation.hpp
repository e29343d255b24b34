#pragma once

// Exact empirical pair correlation of finite Farey sets.
//
// For a sorted point set F in (0, 1] normalised by N, the cumulative pair
// count at lambda is the number of ordered pairs (x, y), x != y, with
// (y - x) mod 1 in (0, lambda / N]. Every membership decision is an integer
// comparison, so pairs sitting exactly on the boundary are always counted.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "fareycorr/farey.hpp"
#include "fareycorr/rational.hpp"

namespace fareycorr::correlation {

using farey::Fraction;

inline constexpr std::uint64_t kDefaultPointCap = 200'000'000;

/// Window length lambda / N, kept exact.
struct RationalWindow {
  Rational lambda;
  std::uint64_t N = 1;
};

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Validated view over a strictly increasing point set in (0, 1].
/// The view does not own the points.
class PairCounter {
 public:
  /// Throws std::invalid_argument for unsorted, duplicate or out-of-range
  /// points, or N == 0.
  PairCounter(std::span<const Fraction> points, std::uint64_t N);

  /// OpenMP two-pointer sweep over contiguous chunks; result is independent
  /// of the thread count.
  std::uint64_t count(const Rational& lambda) const;

  /// Single-threaded reference sweep.
  std::uint64_t count_serial(const Rational& lambda) const;

  std::size_t size() const { return points_.size(); }
  std::uint64_t N() const { return N_; }

 private:
  struct Threshold;
  Threshold prepare(const Rational& lambda) const;
  std::uint64_t sweep(const Threshold& t, std::size_t lo, std::size_t hi) const;

  std::span<const Fraction> points_;
  std::uint64_t N_;
  std::uint32_t max_den_ = 1;
};

/// Ordered pairs with (y - x) mod 1 in (0, lambda/N]. Throws on invalid
/// input, lambda <= 0, or when the exact products would overflow 128 bits.
std::uint64_t pair_count_upto(std::span<const Fraction> points, std::uint64_t N,
                              const Rational& lambda);

std::uint64_t pair_count_upto_serial(std::span<const Fraction> points, std::uint64_t N,
                                     const Rational& lambda);

struct CurveRow {
  Rational lambda;
  std::uint64_t pair_count = 0;
  double G_empirical = 0.0;
  std::optional<double> G_theory;
};

struct CorrelationCurve {
  std::uint64_t N = 0;     // scale: lambda / N is the window length
  std::uint64_t size = 0;  // points counted; G = pair_count / size
  std::vector<CurveRow> rows;
};

/// G(lambda) = pair_count / N over a sorted positive lambda grid.
CorrelationCurve empirical_G(std::span<const Fraction> points, std::uint64_t N,
                             std::span<const Rational> lambdas);

/// Materialises the spec (window included). lambda is scaled by the size of
/// the set without its window, and G is divided by the windowed size, so a
/// window of any length sees the same local spacing.
CorrelationCurve empirical_G(const farey::FareySpec& spec, std::span<const Rational> lambdas,
                             std::uint64_t point_cap = kDefaultPointCap);

/// Same curve without materialising the set: one pass over the stream with a
/// buffer holding only the points inside the largest window, plus the head
/// of the sequence for the wraparound pairs. Normalised as empirical_G.
CorrelationCurve empirical_G_streaming(const farey::FareySpec& spec,
                                       std::span<const Rational> lambdas);

struct DensityBin {
  Rational lo;
  Rational hi;
  std::uint64_t pair_count = 0;
  double density = 0.0;  // pair_count / (size * width)
};

/// Piecewise-constant estimate of g on (0, lambda_max] with `bins` equal bins.
std::vector<DensityBin> empirical_density(std::span<const Fraction> points, std::uint64_t N,
                                          const Rational& lambda_max, std::size_t bins);

std::vector<DensityBin> empirical_density(const farey::FareySpec& spec, const Rational& lambda_max,
                                          std::size_t bins,
                                          std::uint64_t point_cap = kDefaultPointCap);

}  // namespace fareycorr::correlation
