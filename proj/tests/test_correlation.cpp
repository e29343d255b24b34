#include <doctest.h>

#include <omp.h>

#include "fareycorr/correlation.hpp"
#include "fareycorr/ntheory.hpp"
#include "fareycorr/theory.hpp"
#include "oracles.hpp"

using namespace fareycorr;
using namespace fareycorr::correlation;
using farey::AllDenominators;
using farey::CoprimeTo;
using farey::FareySpec;
using farey::ResidueClass;
using farey::Window;

namespace {

const std::vector<Fraction> kF3{{1, 3}, {1, 2}, {2, 3}, {1, 1}};

std::vector<Fraction> points_of(const FareySpec& spec) { return farey::materialize(spec, kDefaultPointCap); }

// Smallest rational with 9 decimals that is >= v.
Rational ceil_rational(double v) {
  return Rational(static_cast<std::int64_t>(std::ceil(v * 1e9)), 1'000'000'000);
}

}  // namespace

TEST_CASE("pair_count_upto examples") {
  CHECK(pair_count_upto(kF3, 4, Rational(1)) == 2);
  CHECK(pair_count_upto(kF3, 4, Rational(4)) == 12);
  CHECK(pair_count_upto(kF3, 4, Rational(100)) == 12);
  const std::vector<Fraction> single{{1, 2}};
  CHECK(pair_count_upto(single, 1, Rational(1)) == 0);
  CHECK(pair_count_upto(single, 7, Rational(1000)) == 0);
  CHECK(pair_count_upto({}, 1, Rational(1)) == 0);
  CHECK(pair_count_upto_serial(kF3, 4, Rational(1)) == 2);
}

TEST_CASE("boundary pairs are included") {
  // 1/2 - 1/3 = 1/6 exactly: lambda/N = 1/6 with N = 4 gives lambda = 2/3.
  CHECK(pair_count_upto(kF3, 4, Rational(2, 3)) == 2);
  CHECK(pair_count_upto(kF3, 4, Rational(2, 3) - Rational(1, 1'000'000)) == 0);
  // gaps of exactly 1/3: 1/3 -> 2/3, 2/3 -> 1/1 and the wraparound 1/1 -> 1/3 + 1
  CHECK(pair_count_upto(kF3, 3, Rational(1)) == 5);
}

TEST_CASE("invalid input is rejected") {
  const std::vector<Fraction> unsorted{{1, 2}, {1, 3}};
  const std::vector<Fraction> duplicate{{1, 3}, {1, 3}};
  const std::vector<Fraction> outside{{3, 2}};
  CHECK_THROWS_AS(pair_count_upto(unsorted, 2, Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(pair_count_upto(duplicate, 2, Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(pair_count_upto(outside, 1, Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(pair_count_upto(kF3, 4, Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(pair_count_upto(kF3, 4, Rational(-1)), std::invalid_argument);
  CHECK_THROWS_AS(pair_count_upto(kF3, 0, Rational(1)), std::invalid_argument);
}

TEST_CASE("exact products that exceed 128 bits are refused") {
  const std::vector<Fraction> pts{{1, 4'000'000'000u}, {1, 3'999'999'999u}};
  const Rational lambda(1, 999'999'999'999'999'989LL);
  CHECK_THROWS_AS(pair_count_upto(pts, 4'000'000'000'000'000'000ULL, lambda), OverflowError);
}

TEST_CASE("sliding window equals brute force on small Farey sets") {
  const std::vector<Rational> lambdas{Rational(3, 10), Rational(1, 2), Rational(1), Rational(2), Rational(5)};
  std::vector<farey::Constraint> matrix{AllDenominators{}, CoprimeTo{2}, CoprimeTo{6}, ResidueClass{5, 3},
                                        ResidueClass{6, 5}};
  for (std::int64_t Q = 1; Q <= 40; ++Q) {
    for (const auto& c : matrix) {
      const auto pts = points_of({Q, c, std::nullopt});
      if (pts.empty()) continue;
      const auto expect = oracle::brute_pair_counts(pts, pts.size(), lambdas);
      for (std::size_t k = 0; k < lambdas.size(); ++k) {
        REQUIRE(pair_count_upto(pts, pts.size(), lambdas[k]) == expect[k]);
        REQUIRE(pair_count_upto_serial(pts, pts.size(), lambdas[k]) == expect[k]);
      }
    }
  }
}

TEST_CASE("parallel result is independent of the thread count") {
  const auto pts = points_of({600, CoprimeTo{3}, std::nullopt});
  const Rational lambda = parse_rational("1.7");
  const auto reference = pair_count_upto_serial(pts, pts.size(), lambda);
  const int saved = omp_get_max_threads();
  for (int threads : {1, 2, 3, 8}) {
    omp_set_num_threads(threads);
    CHECK(pair_count_upto(pts, pts.size(), lambda) == reference);
  }
  omp_set_num_threads(saved);
}

TEST_CASE("pair counts are monotone in lambda") {
  const auto pts = points_of({300, ResidueClass{4, 3}, std::nullopt});
  const PairCounter counter(pts, pts.size());
  std::uint64_t prev = 0;
  for (int k = 1; k <= 200; ++k) {
    const auto c = counter.count(Rational(k, 40));
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("two-sided window count is twice the one-sided count") {
  for (std::int64_t Q = 2; Q <= 60; Q += 2) {
    for (const auto& c : {farey::Constraint{AllDenominators{}}, farey::Constraint{CoprimeTo{3}}}) {
      const auto pts = points_of({Q, c, std::nullopt});
      for (const auto& lambda : {Rational(1, 2), Rational(3, 2), Rational(4)}) {
        if (lambda * 2 >= static_cast<std::int64_t>(pts.size())) continue;
        REQUIRE(2 * pair_count_upto(pts, pts.size(), lambda) ==
                oracle::brute_two_sided_count(pts, pts.size(), lambda));
      }
    }
  }
}

TEST_CASE("no pairs below the support edge") {
  for (std::int64_t Q : {100, 500, 2000}) {
    for (std::int64_t m : {1, 2, 3}) {
      const auto pts = points_of({Q, CoprimeTo{m}, std::nullopt});
      const Rational lambda = ceil_rational(0.4 * ntheory::constant_C(m));
      CHECK(pair_count_upto(pts, pts.size(), lambda) == 0);
    }
  }
}

TEST_CASE("own-N scaling matches the Q^2 scaling of the H count") {
  for (std::int64_t Q = 5; Q <= 200; Q += 15) {
    for (const auto& c : {farey::Constraint{CoprimeTo{2}}, farey::Constraint{ResidueClass{3, 1}}}) {
      const auto pts = points_of({Q, c, std::nullopt});
      const std::uint64_t N = pts.size();
      const std::int64_t Q2 = Q * Q;
      for (const auto& lambda : {Rational(1, 2), Rational(1), Rational(5, 2)}) {
        const Rational h_lambda = lambda * Q2 / static_cast<std::int64_t>(N);
        REQUIRE(pair_count_upto(pts, N, lambda) == pair_count_upto(pts, Q2, h_lambda));
      }
    }
  }
}

TEST_CASE("empirical_G examples") {
  const FareySpec f3{3, AllDenominators{}, std::nullopt};
  const std::vector<Rational> one{Rational(1)};
  auto curve = empirical_G(f3, one);
  CHECK(curve.N == 4);
  CHECK(curve.rows[0].G_empirical == 0.5);
  CHECK(curve.rows[0].pair_count == 2);

  const std::vector<Rational> tiny{Rational(1, 1000)};
  CHECK(empirical_G(f3, tiny).rows[0].G_empirical == 0.0);

  const std::vector<Rational> unsorted{Rational(2), Rational(1)};
  CHECK_THROWS_AS(empirical_G(f3, unsorted), std::invalid_argument);
  CHECK_THROWS_AS(empirical_G({3000, AllDenominators{}, std::nullopt}, one, 1000), farey::ResourceCapError);
}

TEST_CASE("empirical_G at Q = 2000 is close to the limit") {
  const std::vector<Rational> lambdas{Rational(1, 2), Rational(1), Rational(2), Rational(3)};
  const auto curve = empirical_G({2000, CoprimeTo{2}, std::nullopt}, lambdas);
  for (const auto& row : curve.rows) {
    CHECK(std::abs(row.G_empirical - theory::cumulative_G_m(2, to_double(row.lambda))) <= 0.05);
  }
}

TEST_CASE("windowed sets have the same pair correlation") {
  const std::vector<Rational> lambdas{Rational(1, 2), Rational(1), Rational(2), Rational(3)};
  for (const auto& w : {Window{Rational(0), Rational(1, 2)}, Window{Rational(1, 4), Rational(3, 4)}}) {
    const auto curve = empirical_G({2000, CoprimeTo{3}, w}, lambdas);
    for (const auto& row : curve.rows) {
      CHECK(std::abs(row.G_empirical - theory::cumulative_G_m(3, to_double(row.lambda))) <= 0.05);
    }
  }
}

TEST_CASE("windowed curves scale lambda by the full set and divide by the window") {
  const FareySpec spec{60, CoprimeTo{2}, Window{Rational(1, 3), Rational(3, 4)}};
  FareySpec whole = spec;
  whole.window.reset();
  const auto pts = oracle::brute_farey(spec);
  const std::uint64_t n_full = oracle::brute_farey(whole).size();
  const std::vector<Rational> lambdas{Rational(1, 2), Rational(1), Rational(3)};
  const auto expected = oracle::brute_pair_counts(pts, n_full, lambdas);
  for (const auto& curve : {empirical_G(spec, lambdas), empirical_G_streaming(spec, lambdas)}) {
    CHECK(curve.N == n_full);
    CHECK(curve.size == pts.size());
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      CHECK(curve.rows[k].pair_count == expected[k]);
      CHECK(curve.rows[k].G_empirical == static_cast<double>(expected[k]) / static_cast<double>(pts.size()));
    }
  }
}

TEST_CASE("streaming counter agrees with the materialised counter") {
  const std::vector<Rational> lambdas{Rational(1, 10), Rational(3, 10), Rational(1), Rational(7, 3),
                                      Rational(5), Rational(40), Rational(100000)};
  const std::vector<FareySpec> specs{
      {1, AllDenominators{}, std::nullopt},
      {3, AllDenominators{}, std::nullopt},
      {7, CoprimeTo{2}, std::nullopt},
      {150, AllDenominators{}, std::nullopt},
      {150, ResidueClass{4, 3}, std::nullopt},
      {150, CoprimeTo{6}, Window{Rational(1, 5), Rational(4, 5)}},
      {90, AllDenominators{}, Window{Rational(9, 10), Rational(1)}},
  };
  for (const auto& spec : specs) {
    const auto a = empirical_G(spec, lambdas);
    const auto b = empirical_G_streaming(spec, lambdas);
    REQUIRE(a.N == b.N);
    REQUIRE(a.size == b.size);
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      REQUIRE_MESSAGE(a.rows[k].pair_count == b.rows[k].pair_count,
                      "Q=" << spec.Q << " k=" << k);
    }
  }
}

TEST_CASE("empirical_density examples") {
  const FareySpec f3{3, AllDenominators{}, std::nullopt};
  auto one_bin = empirical_density(f3, Rational(4), 1);
  REQUIRE(one_bin.size() == 1);
  CHECK(one_bin[0].pair_count == 12);
  CHECK(one_bin[0].density == 0.75);
  CHECK_THROWS_AS(empirical_density(f3, Rational(4), 0), std::invalid_argument);

  for (std::int64_t m : {1, 2, 3}) {
    const double c = ntheory::constant_C(m);
    const Rational edge = Rational(static_cast<std::int64_t>(std::floor(0.4 * c * 1000)), 1000);
    for (const auto& bin : empirical_density({500, CoprimeTo{m}, std::nullopt}, edge, 8)) {
      CHECK(bin.pair_count == 0);
      CHECK(bin.density == 0.0);
    }
  }
}

TEST_CASE("density histogram at Q = 2000 tracks the limiting density") {
  const auto bins = empirical_density({2000, AllDenominators{}, std::nullopt}, Rational(3), 12);
  REQUIRE(bins.size() == 12);
  for (const auto& bin : bins) {
    const double lo = to_double(bin.lo);
    const double hi = to_double(bin.hi);
    const double lo_G = lo > 0 ? theory::cumulative_G_m(1, lo) : 0.0;
    const double expected = (theory::cumulative_G_m(1, hi) - lo_G) / (hi - lo);
    CHECK(std::abs(bin.density - expected) <= 0.1);
  }
}
