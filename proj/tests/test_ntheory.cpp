#include <doctest.h>

#include <cmath>
#include <numeric>

#include "fareycorr/ntheory.hpp"
#include "oracles.hpp"

using namespace fareycorr;
using namespace fareycorr::ntheory;

TEST_CASE("sieve tables: small bounds") {
  const auto one = build_sieves(1);
  CHECK(one.phi(1) == 1);
  CHECK(one.mu(1) == 1);

  const auto six = build_sieves(6);
  CHECK(six.phi(6) == 2);
  CHECK(six.mu(6) == 1);

  const auto twelve = build_sieves(12);
  CHECK(twelve.phi(12) == 4);
  CHECK(twelve.mu(4) == 0);
  CHECK(twelve.spf(12) == 2);

  CHECK_THROWS_AS(build_sieves(0), std::invalid_argument);
}

TEST_CASE("sieve tables: divisor-sum identities and primes") {
  const auto s = build_sieves(3000);
  for (std::int64_t n = 1; n <= 3000; ++n) {
    std::int64_t phi_sum = 0;
    std::int64_t mu_sum = 0;
    for (std::int64_t d = 1; d <= n; ++d) {
      if (n % d == 0) {
        phi_sum += s.phi(d);
        mu_sum += s.mu(d);
      }
    }
    REQUIRE(phi_sum == n);
    REQUIRE(mu_sum == (n == 1 ? 1 : 0));
    if (s.spf(n) == n && n > 1) {
      CHECK(s.phi(n) == n - 1);
      CHECK(s.mu(n) == -1);
    }
  }
  // beyond the table: trial-division fallback
  CHECK(s.phi(3001 * 2) == totient(6002));
  CHECK(s.mu(3001 * 3) == 1);
  CHECK(s.prime_factors(360) == std::vector<std::int64_t>{2, 3, 5});
}

TEST_CASE("constant_C") {
  CHECK(constant_C(1) == doctest::Approx(0.6079271018540267).epsilon(1e-14));
  CHECK(constant_C(2) == doctest::Approx(0.4052847345693511).epsilon(1e-14));
  CHECK(constant_C(3) == doctest::Approx(0.45594532639052).epsilon(1e-13));
  CHECK(std::abs(constant_C(1) * kZeta2 - 1.0) <= 1e-12);
  CHECK(2.0 / constant_C(2) == doctest::Approx(3.0 * kZeta2).epsilon(1e-14));
  CHECK_THROWS_AS(constant_C(0), std::invalid_argument);
}

TEST_CASE("constant_C: both product forms agree for m <= 1000") {
  double worst = 0.0;
  for (std::int64_t m = 1; m <= 1000; ++m) {
    const long double other =
        static_cast<long double>(oracle::phi(m)) / m / oracle::coprime_zeta2(m);
    worst = std::max(worst, static_cast<double>(std::abs(other / constant_C(m) - 1.0L)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("k_fn examples") {
  for (std::int64_t m : {1, 2, 7, 30}) {
    CHECK(k_fn(1, m) == Rational(1));
  }
  CHECK(k_fn(6, 1) == Rational(1, 3));
  CHECK(k_fn(6, 2) == Rational(2, 3));
}

TEST_CASE("k_fn: closed form equals the divisor-sum definition") {
  for (std::int64_t m : {1, 2, 3, 4, 6, 12}) {
    for (std::int64_t n = 1; n <= 10'000; ++n) {
      REQUIRE_MESSAGE(k_fn(n, m) == k_fn_divisor_sum(n, m), "n=" << n << " m=" << m);
    }
  }
}

TEST_CASE("k_fn is multiplicative") {
  for (std::int64_t m : {1, 2, 3, 4, 6, 12}) {
    for (std::int64_t a = 1; a <= 100; ++a) {
      for (std::int64_t b = 1; b <= 100; ++b) {
        if (std::gcd(a, b) == 1) {
          REQUIRE(k_fn(a * b, m) == k_fn(a, m) * k_fn(b, m));
        }
      }
    }
  }
}

TEST_CASE("gcd_factor") {
  CHECK(gcd_factor(5, 1) == Rational(1));
  CHECK(gcd_factor(6, 2) == Rational(2));
  CHECK(gcd_factor(6, 6) == Rational(3));
  CHECK(gcd_factor_value(6, 6) == 3.0);
  CHECK(gcd_factor_value(9, 12) == 1.5);
}

TEST_CASE("ramanujan_sum examples") {
  CHECK(ramanujan_sum(5, 0) == 4);
  CHECK(ramanujan_sum(6, 1) == 1);
  CHECK(ramanujan_sum(4, 2) == -2);
  CHECK(ramanujan_sum(4, -2) == -2);
}

TEST_CASE("ramanujan_sum against the cosine sum over reduced residues") {
  for (std::int64_t q = 1; q <= 200; ++q) {
    for (std::int64_t n = -3; n <= 2 * q; n += (q > 50 ? 7 : 1)) {
      double s = 0.0;
      for (std::int64_t k = 1; k <= q; ++k) {
        if (std::gcd(k, q) == 1) {
          s += std::cos(2.0 * M_PI * static_cast<double>(k * n % q) / static_cast<double>(q));
        }
      }
      REQUIRE_MESSAGE(static_cast<double>(ramanujan_sum(q, n)) == doctest::Approx(s).epsilon(1e-9).scale(1.0),
                      "q=" << q << " n=" << n);
    }
  }
}

TEST_CASE("ramanujan_sum is multiplicative in q") {
  for (std::int64_t q1 = 1; q1 <= 50; ++q1) {
    for (std::int64_t q2 = 1; q2 <= 50; ++q2) {
      if (std::gcd(q1, q2) != 1) continue;
      for (std::int64_t n : {0, 1, 2, 6, 12, 30, 77}) {
        REQUIRE(ramanujan_sum(q1 * q2, n) == ramanujan_sum(q1, n) * ramanujan_sum(q2, n));
      }
    }
  }
}

TEST_CASE("mod_inverse") {
  CHECK(mod_inverse(3, 7) == 5);
  CHECK(mod_inverse(-3, 7) == 2);
  CHECK_FALSE(mod_inverse(4, 8).has_value());
  CHECK(mod_inverse(0, 1) == 0);
}

namespace {
std::int64_t brute_congruence(std::int64_t q, std::int64_t h, std::int64_t m, IntInterval i1,
                              IntInterval i2) {
  std::int64_t c = 0;
  for (std::int64_t x = i1.lo; x <= i1.hi; ++x) {
    for (std::int64_t y = i2.lo; y <= i2.hi; ++y) {
      if (std::gcd(x, q) == 1 && std::gcd(y, m) == 1 && ((x * y - h) % q + q) % q == 0) ++c;
    }
  }
  return c;
}
}  // namespace

TEST_CASE("count_congruence_solutions examples") {
  CHECK(count_congruence_solutions(3, 1, 1, {1, 3}, {1, 3}) == 2);
  CHECK(count_congruence_solutions(1, 0, 2, {1, 1}, {1, 4}) == 2);
  // (1,3), (2,5), (3,1) out of the 49 pairs in [1,7]^2
  CHECK(count_congruence_solutions(7, 3, 2, {1, 7}, {1, 7}) == 3);
  CHECK(count_congruence_solutions(7, 3, 2, {5, 4}, {1, 7}) == 0);
  CHECK_THROWS_AS(count_congruence_solutions(6, 1, 2, {0, 6}, {0, 6}), std::invalid_argument);
}

TEST_CASE("count_congruence_solutions matches brute force on small boxes") {
  for (std::int64_t q = 1; q <= 30; ++q) {
    for (std::int64_t m : {1, 2, 3, 5}) {
      if (std::gcd(q, m) != 1) continue;
      for (std::int64_t h : {0, 1, 2, 5, 12}) {
        const IntInterval i1{-3, q + 4};
        const IntInterval i2{2, 2 * q + 1};
        REQUIRE(count_congruence_solutions(q, h, m, i1, i2) == brute_congruence(q, h, m, i1, i2));
      }
    }
  }
}

TEST_CASE("count_congruence_solutions: error term stays within 20 q^0.6 (h,q)^0.5") {
  for (std::int64_t m : {2, 3}) {
    for (std::int64_t q = 1; q <= 1000; ++q) {
      if (std::gcd(q, m) != 1) continue;
      for (std::int64_t h : {std::int64_t{1}, std::int64_t{5}, q}) {
        const IntInterval box{0, q};
        const double count = static_cast<double>(count_congruence_solutions(q, h, m, box, box));
        const double main = static_cast<double>(totient(q) * totient(m)) / static_cast<double>(m);
        const double bound = 20.0 * std::pow(static_cast<double>(q), 0.6) *
                             std::sqrt(static_cast<double>(std::gcd(h, q)));
        REQUIRE_MESSAGE(std::abs(count - main) <= bound, "q=" << q << " h=" << h << " m=" << m);
      }
    }
  }
}

TEST_CASE("euler_factor_c and kappa_const") {
  CHECK(euler_factor_c(1, 2.0) == 1.0);
  CHECK(euler_factor_c(6, 2.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(kappa_const(1) == doctest::Approx(2.0 * kZeta2).epsilon(1e-14));
  CHECK(kappa_const(3) == doctest::Approx(4.0 / constant_C(3)).epsilon(1e-14));
}
