#include "fareycorr/theory.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "fareycorr/ntheory.hpp"

namespace fareycorr::theory {

namespace {

constexpr double kCutoffGuard = 1e-12;

// Totients for the theory sums. One table per thread, grown geometrically.
const ntheory::SieveTables& sieve_for(std::int64_t bound) {
  thread_local std::unique_ptr<ntheory::SieveTables> tables;
  if (!tables || tables->bound() < bound) {
    std::int64_t size = tables ? tables->bound() : 1024;
    while (size < bound) {
      size *= 2;
    }
    tables = std::make_unique<ntheory::SieveTables>(size);
  }
  return *tables;
}

void require_positive(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be positive and finite");
  }
}

void require_modulus(std::int64_t m) {
  if (m < 1) {
    throw std::invalid_argument("m must be >= 1");
  }
}

// sum_{Delta <= x} phi(Delta) (Delta,m)/phi((Delta,m)) log(x / Delta)
// Extended precision: just above the support edge log(x / Delta) is tiny and
// inherits the relative rounding error of x.
double log_weighted_sum(std::int64_t m, long double x) {
  const std::int64_t bound = cutoff_bound(static_cast<double>(x));
  if (bound < 1) {
    return 0.0;
  }
  const auto& sieve = sieve_for(bound);
  long double sum = 0.0L;
  for (std::int64_t d = 1; d <= bound; ++d) {
    sum += static_cast<long double>(sieve.phi(d)) * ntheory::gcd_factor_value(d, m) *
           std::log(x / static_cast<long double>(d));
  }
  return static_cast<double>(sum);
}

// sum_{Delta <= x} phi(Delta)/Delta (Delta,m)/phi((Delta,m)) (1 - t + t log t), t = Delta / x
double cumulative_sum(std::int64_t m, double x) {
  const std::int64_t bound = cutoff_bound(x);
  if (bound < 1) {
    return 0.0;
  }
  const auto& sieve = sieve_for(bound);
  double sum = 0.0;
  for (std::int64_t d = 1; d <= bound; ++d) {
    const double t = static_cast<double>(d) / x;
    const double shape = 1.0 - t + t * std::log(t);
    sum += static_cast<double>(sieve.phi(d)) / static_cast<double>(d) *
           ntheory::gcd_factor_value(d, m) * shape;
  }
  return sum;
}

}  // namespace

Variant parse_variant(std::string_view text) {
  if (text == "full") {
    return Variant::Full;
  }
  if (text == "coprime") {
    return Variant::Coprime;
  }
  if (text == "residue") {
    return Variant::Residue;
  }
  throw std::invalid_argument("unknown variant '" + std::string(text) +
                              "' (expected full, coprime or residue)");
}

std::int64_t cutoff_bound(double x) {
  if (!(x > 0.0)) {
    return 0;
  }
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= kCutoffGuard * std::max(1.0, x)) {
    return static_cast<std::int64_t>(nearest);
  }
  return static_cast<std::int64_t>(std::floor(x));
}

CutoffIndex cutoff_index(std::int64_t m, double lambda, Variant variant) {
  require_modulus(m);
  const double scale =
      variant == Variant::Residue ? ntheory::kappa_const(m) : 2.0 / ntheory::constant_C(m);
  return {lambda, cutoff_bound(scale * lambda)};
}

double g_full(double lambda) {
  require_positive(lambda);
  const long double x = 2.0L * ntheory::kZeta2 * lambda;
  return log_weighted_sum(1, x) / (ntheory::kZeta2 * lambda * lambda);
}

double g_m(std::int64_t m, double lambda) {
  require_modulus(m);
  require_positive(lambda);
  const double c = ntheory::constant_C(m);
  const long double x = 2.0L * lambda / c;
  const double phi_m = static_cast<double>(ntheory::totient(m));
  return phi_m / static_cast<double>(m) * c / (lambda * lambda) * log_weighted_sum(m, x);
}

double cumulative_G_m(std::int64_t m, double lambda) {
  require_modulus(m);
  require_positive(lambda);
  const double x = 2.0 * lambda / ntheory::constant_C(m);
  const double phi_m = static_cast<double>(ntheory::totient(m));
  return 2.0 * phi_m / static_cast<double>(m) * cumulative_sum(m, x);
}

double g_tilde(std::int64_t m, double lambda) {
  require_modulus(m);
  require_positive(lambda);
  const double c = ntheory::constant_C(m);
  const double phi_m = static_cast<double>(ntheory::totient(m));
  const long double kappa = 2.0L * phi_m / c;
  return c / (static_cast<double>(m) * phi_m) / (lambda * lambda) * log_weighted_sum(m, kappa * lambda);
}

double cumulative_G_tilde(std::int64_t m, double lambda) {
  require_modulus(m);
  require_positive(lambda);
  const double x = ntheory::kappa_const(m) * lambda;
  const std::int64_t bound = cutoff_bound(x);
  if (bound < 1) {
    return 0.0;
  }
  const auto& sieve = sieve_for(bound);
  double sum = 0.0;
  for (std::int64_t d = 1; d <= bound; ++d) {
    const double dd = static_cast<double>(d);
    sum += static_cast<double>(sieve.phi(d)) * ntheory::gcd_factor_value(d, m) *
           (1.0 / dd - 1.0 / x - std::log(x / dd) / x);
  }
  return 2.0 / static_cast<double>(m) * sum;
}

double g_two_explicit(double lambda) {
  require_positive(lambda);
  const double x = 3.0 * ntheory::kZeta2 * lambda;
  const std::int64_t bound = cutoff_bound(x);
  if (bound < 1) {
    return 0.0;
  }
  const auto& sieve = sieve_for(bound);
  double sum = 0.0;
  for (std::int64_t d = 1; d <= bound; ++d) {
    const double g = d % 2 == 0 ? 2.0 : 1.0;
    sum += static_cast<double>(sieve.phi(d)) * g * std::log(x / static_cast<double>(d));
  }
  return sum / (3.0 * ntheory::kZeta2 * lambda * lambda);
}

double limit_deficit(std::int64_t m, double lambda) {
  return lambda * (g_m(m, lambda) - 1.0);
}

DirichletCheck dirichlet_partial_sum_check(std::int64_t m, std::int64_t x) {
  require_modulus(m);
  if (x < 1) {
    throw std::invalid_argument("x must be >= 1");
  }
  DirichletCheck out;
  const double xd = static_cast<double>(x);
  for (std::int64_t d = 1; d <= x; ++d) {
    const Rational weight = ntheory::k_fn(d, m) * d;
    out.lhs += to_double(weight) * std::log(xd / static_cast<double>(d));
  }
  out.main_term = ntheory::euler_factor_c(m, 2.0) * xd * xd / (4.0 * ntheory::kZeta2);
  return out;
}

double evaluate(const TheoryParams& params, double lambda) {
  switch (params.variant) {
    case Variant::Full:
      return params.cumulative ? cumulative_G_m(1, lambda) : g_full(lambda);
    case Variant::Coprime:
      return params.cumulative ? cumulative_G_m(params.m, lambda) : g_m(params.m, lambda);
    case Variant::Residue:
      return params.cumulative ? cumulative_G_tilde(params.m, lambda) : g_tilde(params.m, lambda);
  }
  throw std::logic_error("unreachable variant");
}

std::vector<double> evaluate_grid(const TheoryParams& params, std::span<const double> lambdas) {
  std::vector<double> out(lambdas.size());
  const auto n = static_cast<std::int64_t>(lambdas.size());
  // Exceptions cannot cross the parallel region; validate first.
  for (double l : lambdas) {
    require_positive(l);
  }
  require_modulus(params.m);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = evaluate(params, lambdas[i]);
  }
  return out;
}

std::vector<double> evaluate_grid_serial(const TheoryParams& params,
                                         std::span<const double> lambdas) {
  std::vector<double> out;
  out.reserve(lambdas.size());
  for (double l : lambdas) {
    out.push_back(evaluate(params, l));
  }
  return out;
}

}  // namespace fareycorr::theory
