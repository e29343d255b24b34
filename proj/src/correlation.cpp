#include "fareycorr/correlation.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include <omp.h>

namespace fareycorr::correlation {

struct PairCounter::Threshold {
  bool everything = false;
  __int128 scale = 0;  // N * lambda_den
  __int128 lam_num = 0;
};

namespace {

constexpr __int128 kInt128Max = static_cast<__int128>((static_cast<unsigned __int128>(1) << 127) - 1);

// a * b fits in a signed 128-bit integer, for a, b >= 0.
bool product_fits(__int128 a, __int128 b) {
  return a == 0 || b <= kInt128Max / a;
}

void require_positive(const Rational& lambda) {
  if (lambda <= 0) {
    throw std::invalid_argument("lambda must be positive");
  }
}

}  // namespace

PairCounter::PairCounter(std::span<const Fraction> points, std::uint64_t N)
    : points_(points), N_(N) {
  if (N == 0) {
    throw std::invalid_argument("normalising cardinality N must be >= 1");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Fraction& f = points[i];
    if (f.den == 0 || f.num == 0 || f.num > f.den) {
      throw std::invalid_argument("point " + std::to_string(i) + " is outside (0, 1]");
    }
    max_den_ = std::max(max_den_, f.den);
    if (i > 0 && !(points[i - 1] < f)) {
      throw std::invalid_argument("points must be strictly increasing (violated at index " +
                                  std::to_string(i) + ")");
    }
  }
}

PairCounter::Threshold PairCounter::prepare(const Rational& lambda) const {
  require_positive(lambda);
  Threshold t;
  t.lam_num = lambda.numerator();
  t.scale = static_cast<__int128>(N_) * lambda.denominator();
  // Window of length >= 1 captures every ordered pair.
  if (t.lam_num >= t.scale) {
    t.everything = true;
    return t;
  }
  // Worst cases: cross-difference numerator < 2 q^2, products q q'.
  const __int128 q = max_den_;
  if (!product_fits(2 * q * q, t.scale) || !product_fits(q * q, t.lam_num)) {
    throw OverflowError("exact window test overflows 128 bits; reduce Q or lambda precision");
  }
  return t;
}

std::uint64_t PairCounter::sweep(const Threshold& t, std::size_t lo, std::size_t hi) const {
  const std::size_t P = points_.size();
  // Extended index k in [0, 2P): k >= P is points[k - P] shifted by +1.
  auto within = [&](std::size_t i, std::size_t k) {
    const Fraction& x = points_[i];
    const Fraction& y = points_[k < P ? k : k - P];
    const __int128 y_num = static_cast<__int128>(y.num) + (k < P ? 0 : y.den);
    const __int128 diff = y_num * x.den - static_cast<__int128>(x.num) * y.den;
    return diff * t.scale <= t.lam_num * x.den * y.den;
  };

  // First k in (lo, lo + P) outside the window of lo.
  std::size_t a = lo + 1;
  std::size_t b = lo + P;
  while (a < b) {
    const std::size_t mid = a + (b - a) / 2;
    if (within(lo, mid)) {
      a = mid + 1;
    } else {
      b = mid;
    }
  }
  std::size_t j = a;
  std::uint64_t total = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    j = std::max(j, i + 1);
    while (j < i + P && within(i, j)) {
      ++j;
    }
    total += j - i - 1;
  }
  return total;
}

std::uint64_t PairCounter::count_serial(const Rational& lambda) const {
  const Threshold t = prepare(lambda);
  const std::uint64_t P = points_.size();
  if (P < 2) {
    return 0;
  }
  if (t.everything) {
    return P * (P - 1);
  }
  return sweep(t, 0, P);
}

std::uint64_t PairCounter::count(const Rational& lambda) const {
  const Threshold t = prepare(lambda);
  const std::int64_t P = static_cast<std::int64_t>(points_.size());
  if (P < 2) {
    return 0;
  }
  if (t.everything) {
    return static_cast<std::uint64_t>(P) * static_cast<std::uint64_t>(P - 1);
  }
  const std::int64_t chunk = std::max<std::int64_t>(4096, P / (8 * omp_get_max_threads()) + 1);
  const std::int64_t chunks = (P + chunk - 1) / chunk;
  std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const auto lo = static_cast<std::size_t>(c * chunk);
    const auto hi = static_cast<std::size_t>(std::min(P, (c + 1) * chunk));
    total += sweep(t, lo, hi);
  }
  return total;
}

std::uint64_t pair_count_upto(std::span<const Fraction> points, std::uint64_t N,
                              const Rational& lambda) {
  return PairCounter(points, N).count(lambda);
}

std::uint64_t pair_count_upto_serial(std::span<const Fraction> points, std::uint64_t N,
                                     const Rational& lambda) {
  return PairCounter(points, N).count_serial(lambda);
}

namespace {

void require_grid(std::span<const Rational> lambdas) {
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    require_positive(lambdas[i]);
    if (i > 0 && !(lambdas[i - 1] < lambdas[i])) {
      throw std::invalid_argument("lambda grid must be strictly increasing");
    }
  }
}

CorrelationCurve build_curve(std::span<const Fraction> points, std::uint64_t N, std::uint64_t size,
                             std::span<const Rational> lambdas) {
  require_grid(lambdas);
  const PairCounter counter(points, N);
  CorrelationCurve curve;
  curve.N = N;
  curve.size = size;
  curve.rows.reserve(lambdas.size());
  for (const Rational& lambda : lambdas) {
    const std::uint64_t pairs = counter.count(lambda);
    curve.rows.push_back(
        {lambda, pairs, static_cast<double>(pairs) / static_cast<double>(size), std::nullopt});
  }
  return curve;
}

std::vector<DensityBin> build_density(std::span<const Fraction> points, std::uint64_t N,
                                      std::uint64_t size, const Rational& lambda_max,
                                      std::size_t bins) {
  require_positive(lambda_max);
  if (bins == 0) {
    throw std::invalid_argument("bins must be >= 1");
  }
  const PairCounter counter(points, N);
  const Rational width = lambda_max / static_cast<std::int64_t>(bins);
  const double width_d = to_double(width);
  std::vector<DensityBin> out;
  out.reserve(bins);
  std::uint64_t below = 0;
  for (std::size_t j = 1; j <= bins; ++j) {
    const Rational hi = width * static_cast<std::int64_t>(j);
    const std::uint64_t upto = counter.count(hi);
    const std::uint64_t in_bin = upto - below;
    out.push_back({hi - width, hi, in_bin,
                   static_cast<double>(in_bin) / (static_cast<double>(size) * width_d)});
    below = upto;
  }
  return out;
}

// Full-set cardinality, the scale for lambda; windows only change the divisor.
std::uint64_t scale_cardinality(const farey::FareySpec& spec) {
  farey::FareySpec whole = spec;
  whole.window.reset();
  return farey::count(whole);
}

}  // namespace

CorrelationCurve empirical_G(std::span<const Fraction> points, std::uint64_t N,
                             std::span<const Rational> lambdas) {
  return build_curve(points, N, N, lambdas);
}

CorrelationCurve empirical_G(const farey::FareySpec& spec, std::span<const Rational> lambdas,
                             std::uint64_t point_cap) {
  const auto points = farey::materialize(spec, point_cap);
  if (points.empty()) {
    throw std::invalid_argument("spec selects no points");
  }
  return build_curve(points, scale_cardinality(spec), points.size(), lambdas);
}

CorrelationCurve empirical_G_streaming(const farey::FareySpec& spec,
                                       std::span<const Rational> lambdas) {
  require_grid(lambdas);
  spec.validate();
  const std::uint64_t N = scale_cardinality(spec);
  CorrelationCurve curve;
  curve.N = N;

  // Windows of length >= 1 take every pair and are settled without a sweep.
  std::size_t sweep_count = 0;
  while (sweep_count < lambdas.size() &&
         static_cast<__int128>(lambdas[sweep_count].numerator()) <
             static_cast<__int128>(N) * lambdas[sweep_count].denominator()) {
    ++sweep_count;
  }
  std::vector<__int128> scale(sweep_count);
  std::vector<__int128> lam_num(sweep_count);
  for (std::size_t k = 0; k < sweep_count; ++k) {
    lam_num[k] = lambdas[k].numerator();
    scale[k] = static_cast<__int128>(N) * lambdas[k].denominator();
    const __int128 q = spec.Q;
    if (!product_fits(2 * q * q, scale[k]) || !product_fits(q * q, lam_num[k])) {
      throw OverflowError("exact window test overflows 128 bits; reduce Q or lambda precision");
    }
  }

  // Smallest k whose window holds a difference num/den; sweep_count if none.
  auto first_window = [&](__int128 num, __int128 den) {
    std::size_t a = 0;
    std::size_t b = sweep_count;
    while (a < b) {
      const std::size_t mid = a + (b - a) / 2;
      if (num * scale[mid] <= lam_num[mid] * den) {
        b = mid;
      } else {
        a = mid + 1;
      }
    }
    return a;
  };

  std::vector<std::uint64_t> hits(sweep_count + 1, 0);
  auto record = [&](const Fraction& x, __int128 y_num, __int128 y_den) {
    const __int128 diff = y_num * x.den - static_cast<__int128>(x.num) * y_den;
    const std::size_t k = first_window(diff, static_cast<__int128>(x.den) * y_den);
    ++hits[k];
  };

  std::uint64_t size = 0;
  if (sweep_count > 0) {
    const __int128 wide_scale = scale[sweep_count - 1];
    const __int128 wide_num = lam_num[sweep_count - 1];
    auto in_widest = [&](const Fraction& x, __int128 y_num, __int128 y_den) {
      const __int128 diff = y_num * x.den - static_cast<__int128>(x.num) * y_den;
      return diff * wide_scale <= wide_num * x.den * y_den;
    };

    std::deque<Fraction> recent;
    std::vector<Fraction> head;
    const Fraction origin{0, 1};
    farey::FareyStream stream(spec);
    while (auto y = stream.next()) {
      ++size;
      while (!recent.empty() && !in_widest(recent.front(), y->num, y->den)) {
        recent.pop_front();
      }
      for (const Fraction& x : recent) {
        record(x, y->num, y->den);
      }
      recent.push_back(*y);
      if (in_widest(origin, y->num, y->den)) {
        head.push_back(*y);
      }
    }
    // Every tail point that can reach a shifted head point is still buffered.
    for (const Fraction& x : recent) {
      for (const Fraction& h : head) {
        const __int128 shifted = static_cast<__int128>(h.num) + h.den;
        if (!in_widest(x, shifted, h.den)) {
          break;
        }
        record(x, shifted, h.den);
      }
    }
  } else {
    farey::for_each_fraction(spec, [&size](const Fraction&) { ++size; });
  }
  if (size == 0) {
    throw std::invalid_argument("spec selects no points");
  }
  curve.size = size;

  const std::uint64_t all_pairs = size * (size - 1);
  std::uint64_t running = 0;
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    std::uint64_t pairs = all_pairs;
    if (k < sweep_count) {
      running += hits[k];
      pairs = running;
    }
    curve.rows.push_back(
        {lambdas[k], pairs, static_cast<double>(pairs) / static_cast<double>(size), std::nullopt});
  }
  return curve;
}

std::vector<DensityBin> empirical_density(std::span<const Fraction> points, std::uint64_t N,
                                          const Rational& lambda_max, std::size_t bins) {
  return build_density(points, N, N, lambda_max, bins);
}

std::vector<DensityBin> empirical_density(const farey::FareySpec& spec, const Rational& lambda_max,
                                          std::size_t bins, std::uint64_t point_cap) {
  const auto points = farey::materialize(spec, point_cap);
  if (points.empty()) {
    throw std::invalid_argument("spec selects no points");
  }
  return build_density(points, scale_cardinality(spec), points.size(), lambda_max, bins);
}

}  // namespace fareycorr::correlation
