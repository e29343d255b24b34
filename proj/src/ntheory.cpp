#include "fareycorr/ntheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace fareycorr::ntheory {

SieveTables::SieveTables(std::int64_t bound) : bound_(bound) {
  if (bound < 1) {
    throw std::invalid_argument("sieve bound must be >= 1, got " + std::to_string(bound));
  }
  if (bound >= (std::int64_t{1} << 31)) {
    throw std::invalid_argument("sieve bound too large");
  }
  const auto n = static_cast<std::size_t>(bound) + 1;
  phi_.assign(n, 0);
  mu_.assign(n, 0);
  spf_.assign(n, 0);
  phi_[1] = 1;
  mu_[1] = 1;
  spf_[1] = 1;

  std::vector<std::int32_t> primes;
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::int32_t>(i);
      phi_[i] = i - 1;
      mu_[i] = -1;
      primes.push_back(static_cast<std::int32_t>(i));
    }
    for (std::int32_t p : primes) {
      const std::int64_t ip = i * p;
      if (p > spf_[i] || ip > bound) {
        break;
      }
      spf_[ip] = p;
      if (i % p == 0) {
        phi_[ip] = phi_[i] * p;
        mu_[ip] = 0;
      } else {
        phi_[ip] = phi_[i] * (p - 1);
        mu_[ip] = static_cast<std::int8_t>(-mu_[i]);
      }
    }
  }
}

std::int64_t SieveTables::phi(std::int64_t n) const {
  if (n >= 1 && n <= bound_) {
    return phi_[n];
  }
  return totient(n);
}

int SieveTables::mu(std::int64_t n) const {
  if (n >= 1 && n <= bound_) {
    return mu_[n];
  }
  return moebius(n);
}

std::int64_t SieveTables::spf(std::int64_t n) const {
  if (n >= 1 && n <= bound_) {
    return spf_[n];
  }
  auto f = distinct_prime_factors(n);
  return f.empty() ? 1 : f.front();
}

std::vector<std::int64_t> SieveTables::prime_factors(std::int64_t n) const {
  if (n < 1 || n > bound_) {
    return distinct_prime_factors(n);
  }
  std::vector<std::int64_t> out;
  while (n > 1) {
    const std::int64_t p = spf_[n];
    out.push_back(p);
    while (n % p == 0) {
      n /= p;
    }
  }
  return out;
}

std::vector<std::int64_t> distinct_prime_factors(std::int64_t n) {
  if (n < 1) {
    throw std::invalid_argument("prime factors require n >= 1");
  }
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) {
        n /= p;
      }
    }
  }
  if (n > 1) {
    out.push_back(n);
  }
  return out;
}

std::int64_t totient(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p : distinct_prime_factors(n)) {
    result = result / p * (p - 1);
  }
  return result;
}

int moebius(std::int64_t n) {
  if (n < 1) {
    throw std::invalid_argument("moebius requires n >= 1");
  }
  int sign = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) {
        return 0;
      }
      sign = -sign;
    }
  }
  return n > 1 ? -sign : sign;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1) {
    throw std::invalid_argument("divisors require n >= 1");
  }
  std::vector<std::int64_t> small;
  std::vector<std::int64_t> large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) {
        large.push_back(n / d);
      }
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::optional<std::int64_t> mod_inverse(std::int64_t a, std::int64_t q) {
  if (q < 1) {
    throw std::invalid_argument("modulus must be >= 1");
  }
  if (q == 1) {
    return 0;
  }
  std::int64_t r0 = ((a % q) + q) % q;
  std::int64_t r1 = q;
  std::int64_t s0 = 1;
  std::int64_t s1 = 0;
  while (r1 != 0) {
    const std::int64_t t = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - t * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - t * s1};
  }
  if (r0 != 1) {
    return std::nullopt;
  }
  return ((s0 % q) + q) % q;
}

double constant_C(std::int64_t m) {
  if (m < 1) {
    throw std::invalid_argument("C_m requires m >= 1");
  }
  double c = static_cast<double>(totient(m)) / (kZeta2 * static_cast<double>(m));
  for (std::int64_t p : distinct_prime_factors(m)) {
    const double pp = static_cast<double>(p);
    c /= 1.0 - 1.0 / (pp * pp);
  }
  return c;
}

double euler_factor_c(std::int64_t m, double s) {
  if (m < 1) {
    throw std::invalid_argument("c_m(s) requires m >= 1");
  }
  double c = 1.0;
  for (std::int64_t p : distinct_prime_factors(m)) {
    c /= 1.0 - std::pow(static_cast<double>(p), -s);
  }
  return c;
}

double kappa_const(std::int64_t m) {
  return 2.0 * static_cast<double>(totient(m)) / constant_C(m);
}

Rational k_fn(std::int64_t n, std::int64_t m) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("k_fn requires n, m >= 1");
  }
  return Rational(totient(n), n) * gcd_factor(n, m);
}

Rational k_fn_divisor_sum(std::int64_t n, std::int64_t m) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("k_fn requires n, m >= 1");
  }
  Rational sum(0);
  for (std::int64_t d : divisors(n)) {
    if (std::gcd(d, m) == 1) {
      sum += Rational(moebius(d), d);
    }
  }
  return sum;
}

Rational gcd_factor(std::int64_t delta, std::int64_t m) {
  if (delta < 1 || m < 1) {
    throw std::invalid_argument("gcd_factor requires delta, m >= 1");
  }
  const std::int64_t g = std::gcd(delta, m);
  return Rational(g, totient(g));
}

double gcd_factor_value(std::int64_t delta, std::int64_t m) {
  if (m == 1) {
    return 1.0;
  }
  const std::int64_t g = std::gcd(delta, m);
  return g == 1 ? 1.0 : static_cast<double>(g) / static_cast<double>(totient(g));
}

std::int64_t ramanujan_sum(std::int64_t q, std::int64_t n) {
  if (q < 1) {
    throw std::invalid_argument("ramanujan_sum requires q >= 1");
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, q);  // gcd(0, q) = q
  std::int64_t sum = 0;
  for (std::int64_t d : divisors(g)) {
    sum += moebius(q / d) * d;
  }
  return sum;
}

std::int64_t count_congruence_solutions(std::int64_t q, std::int64_t h, std::int64_t m,
                                        IntInterval i1, IntInterval i2) {
  if (q < 1 || m < 1) {
    throw std::invalid_argument("count_congruence_solutions requires q, m >= 1");
  }
  if (std::gcd(q, m) != 1) {
    throw std::invalid_argument("count_congruence_solutions requires gcd(q, m) = 1");
  }
  if (i1.length() == 0 || i2.length() == 0) {
    return 0;
  }
  const std::int64_t hq = ((h % q) + q) % q;
  std::int64_t count = 0;
  for (std::int64_t x = i1.lo; x <= i1.hi; ++x) {
    auto inv = mod_inverse(x, q);
    if (!inv) {
      continue;
    }
    const std::int64_t r = static_cast<std::int64_t>(
        (static_cast<__int128>(hq) * *inv) % q);
    std::int64_t y = i2.lo + (((r - i2.lo) % q) + q) % q;
    for (; y <= i2.hi; y += q) {
      if (std::gcd(y < 0 ? -y : y, m) == 1) {
        ++count;
      }
    }
  }
  return count;
}

}  // namespace fareycorr::ntheory
