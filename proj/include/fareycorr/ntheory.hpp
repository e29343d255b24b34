#pragma once

// Arithmetic kernel: sieves, multiplicative functions and the density
// constants that govern pair correlations of congruence-constrained Farey sets.

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "fareycorr/rational.hpp"

namespace fareycorr::ntheory {

inline constexpr double kZeta2 = std::numbers::pi * std::numbers::pi / 6.0;

/// Totient, Moebius and smallest-prime-factor tables for 1..bound.
/// Immutable after construction; safe for concurrent readers.
class SieveTables {
 public:
  /// Linear sieve. Throws std::invalid_argument for bound < 1.
  explicit SieveTables(std::int64_t bound);

  std::int64_t bound() const { return bound_; }

  // Lookups fall back to trial division for n > bound().
  std::int64_t phi(std::int64_t n) const;
  int mu(std::int64_t n) const;
  std::int64_t spf(std::int64_t n) const;

  /// Distinct primes dividing n, ascending.
  std::vector<std::int64_t> prime_factors(std::int64_t n) const;

  std::span<const std::int64_t> phi_table() const { return phi_; }

 private:
  std::int64_t bound_;
  std::vector<std::int64_t> phi_;  // index 0 unused
  std::vector<std::int8_t> mu_;
  std::vector<std::int32_t> spf_;
};

inline SieveTables build_sieves(std::int64_t bound) { return SieveTables(bound); }

/// Modulus m with an optional residue b; requires m >= 1 and gcd(b, m) = 1.
struct ModulusParams {
  std::int64_t m = 1;
  std::optional<std::int64_t> b;
};

// Trial-division primitives, for arguments too small to justify a sieve.
std::vector<std::int64_t> distinct_prime_factors(std::int64_t n);
std::int64_t totient(std::int64_t n);
int moebius(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);

/// Inverse of a modulo q, if gcd(a, q) = 1. q >= 1.
std::optional<std::int64_t> mod_inverse(std::int64_t a, std::int64_t q);

/// C_m = phi(m) / (zeta(2) m) * prod_{p | m} (1 - p^-2)^-1.
/// The density of denominators coprime to m: #F_Q^(m) ~ C_m Q^2 / 2.
double constant_C(std::int64_t m);

/// c_m(s) = prod_{p | m} (1 - p^-s)^-1.
double euler_factor_c(std::int64_t m, double s);

/// 2 phi(m) / C_m, the cutoff scale for the residue-class correlation.
double kappa_const(std::int64_t m);

/// sum_{d | n, (d, m) = 1} mu(d) / d, evaluated through the closed form
/// phi(n)/n * (n, m)/phi((n, m)).
Rational k_fn(std::int64_t n, std::int64_t m);

/// The divisor-sum definition of k_fn, kept as an independent route.
Rational k_fn_divisor_sum(std::int64_t n, std::int64_t m);

/// (delta, m) / phi((delta, m)).
Rational gcd_factor(std::int64_t delta, std::int64_t m);

/// Same value as a double, for hot loops.
double gcd_factor_value(std::int64_t delta, std::int64_t m);

/// c_q(n) = sum_{d | (n, q)} mu(q/d) d, with (0, q) = q.
std::int64_t ramanujan_sum(std::int64_t q, std::int64_t n);

/// Closed integer interval [lo, hi]; empty when lo > hi.
struct IntInterval {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
  std::int64_t length() const { return hi >= lo ? hi - lo + 1 : 0; }
};

/// #{(x, y) in I1 x I2 : (x, q) = 1, (y, m) = 1, xy = h mod q}.
/// Enumerates x and walks the residue class of y. Throws
/// std::invalid_argument unless gcd(q, m) = 1.
std::int64_t count_congruence_solutions(std::int64_t q, std::int64_t h, std::int64_t m,
                                        IntInterval i1, IntInterval i2);

}  // namespace fareycorr::ntheory
