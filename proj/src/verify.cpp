#include "fareycorr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "fareycorr/correlation.hpp"
#include "fareycorr/farey.hpp"
#include "fareycorr/ntheory.hpp"
#include "fareycorr/theory.hpp"

namespace fareycorr::verify {

namespace {

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

CheckResult make(std::string suite, std::string name, double worst, double limit,
                 std::string detail = {}) {
  return {std::move(suite), std::move(name), worst <= limit, worst, limit, std::move(detail)};
}

std::vector<CheckResult> kfn_suite() {
  std::vector<CheckResult> out;
  double mismatches = 0;
  for (std::int64_t m : {1, 2, 3, 4, 6, 12}) {
    for (std::int64_t n = 1; n <= 10'000; ++n) {
      if (ntheory::k_fn(n, m) != ntheory::k_fn_divisor_sum(n, m)) {
        ++mismatches;
      }
    }
  }
  out.push_back(make("kfn", "closed form == divisor sum, n <= 1e4", mismatches, 0.0));

  double failures = 0;
  for (std::int64_t m : {1, 2, 3, 6}) {
    for (std::int64_t a = 1; a <= 100; ++a) {
      for (std::int64_t b = 1; b <= 100; ++b) {
        if (std::gcd(a, b) == 1 &&
            ntheory::k_fn(a * b, m) != ntheory::k_fn(a, m) * ntheory::k_fn(b, m)) {
          ++failures;
        }
      }
    }
  }
  out.push_back(make("kfn", "multiplicative on coprime a, b <= 100", failures, 0.0));
  return out;
}

std::vector<CheckResult> theorem2_suite() {
  double worst = 0.0;
  for (std::int64_t m = 1; m <= 12; ++m) {
    const double phi_m = static_cast<double>(ntheory::totient(m));
    for (int k = 1; k <= 1000; ++k) {
      const double lambda = 0.01 * k;
      worst = std::max(worst, relative_gap(theory::g_tilde(m, lambda), theory::g_m(m, phi_m * lambda)));
    }
  }
  return {make("theorem2", "g_tilde(m, l) == g_m(m, phi(m) l), m <= 12", worst, 1e-12)};
}

std::vector<CheckResult> identities_suite() {
  double worst_full = 0.0;
  double worst_two = 0.0;
  for (int k = 1; k <= 1000; ++k) {
    const double lambda = 0.01 * k;
    worst_full = std::max(worst_full, relative_gap(theory::g_m(1, lambda), theory::g_full(lambda)));
    if (lambda >= 0.3) {
      worst_two = std::max(worst_two, relative_gap(theory::g_m(2, lambda), theory::g_two_explicit(lambda)));
    }
  }
  return {make("identities", "g_m(1, .) == g_full", worst_full, 1e-12),
          make("identities", "g_m(2, .) == explicit m=2 formula", worst_two, 1e-12)};
}

std::vector<CheckResult> dirichlet_suite(std::int64_t x) {
  std::vector<CheckResult> out;
  for (std::int64_t m : {1, 2, 3, 6}) {
    const auto check = theory::dirichlet_partial_sum_check(m, x);
    out.push_back(make("dirichlet", "m=" + std::to_string(m) + " x=" + std::to_string(x),
                       std::abs(check.relative_gap()), 0.01));
  }
  return out;
}

std::vector<CheckResult> proposition_suite(std::int64_t qmax) {
  std::vector<CheckResult> out;
  for (std::int64_t m : {2, 3}) {
    double worst = 0.0;
    std::int64_t worst_q = 0;
    for (std::int64_t q = 1; q <= qmax; ++q) {
      if (std::gcd(q, m) != 1) {
        continue;
      }
      for (std::int64_t h : {std::int64_t{1}, std::int64_t{5}, q}) {
        const ntheory::IntInterval iv{0, q};
        const double count = static_cast<double>(ntheory::count_congruence_solutions(q, h, m, iv, iv));
        const double main = static_cast<double>(ntheory::totient(q) * ntheory::totient(m)) /
                            static_cast<double>(m);
        const double bound = 20.0 * std::pow(static_cast<double>(q), 0.6) *
                             std::sqrt(static_cast<double>(std::gcd(h, q)));
        const double ratio = std::abs(count - main) / bound;
        if (ratio > worst) {
          worst = ratio;
          worst_q = q;
        }
      }
    }
    out.push_back(make("proposition",
                       "m=" + std::to_string(m) + " q<=" + std::to_string(qmax) +
                           " |count-main|/bound",
                       worst, 1.0, "worst q=" + std::to_string(worst_q)));
  }
  return out;
}

std::vector<CheckResult> support_suite() {
  std::vector<CheckResult> out;
  for (std::int64_t m : {1, 2, 3}) {
    const double c = ntheory::constant_C(m);
    double theory_below = 0.0;
    for (int k = 1; k <= 100; ++k) {
      theory_below = std::max(theory_below, theory::g_m(m, c / 2.0 * (1.0 - 1e-9) * k / 100.0));
    }
    out.push_back(make("support", "g_m = 0 below C_m/2, m=" + std::to_string(m), theory_below, 0.0));
    const double above = theory::g_m(m, c / 2.0 * (1.0 + 1e-3));
    out.push_back(make("support", "g_m > 0 just above C_m/2, m=" + std::to_string(m),
                       above > 0.0 ? 0.0 : 1.0, 0.0));

    // 0.4 C_m as an exact rational just above the double value is still below C_m/2.
    const Rational lambda(static_cast<std::int64_t>(std::ceil(0.4 * c * 1e9)), 1'000'000'000);
    double pairs_total = 0.0;
    for (std::int64_t Q : {100, 500, 2000}) {
      farey::FareySpec spec{Q, farey::CoprimeTo{m}, std::nullopt};
      const auto points = farey::materialize(spec, correlation::kDefaultPointCap);
      pairs_total += static_cast<double>(correlation::pair_count_upto(points, points.size(), lambda));
    }
    out.push_back(make("support", "empirical pairs at 0.4 C_m, m=" + std::to_string(m),
                       pairs_total, 0.0));
  }
  return out;
}

std::vector<CheckResult> limit_suite() {
  std::vector<CheckResult> out;
  for (std::int64_t m : {1, 2, 3, 6}) {
    double worst_abs = 0.0;
    for (double lambda : {100.0, 500.0, 1000.0}) {
      worst_abs = std::max(worst_abs, std::abs(theory::g_m(m, lambda) - 1.0));
    }
    out.push_back(make("limit", "|g_m - 1| at 100,500,1000, m=" + std::to_string(m), worst_abs, 0.01));
    double worst_deficit = 0.0;
    for (double lambda = 10.0; lambda <= 1000.0; lambda += 0.5) {
      worst_deficit = std::max(worst_deficit, std::abs(theory::limit_deficit(m, lambda)));
    }
    out.push_back(make("limit", "lambda |g_m - 1| on [10, 1000], m=" + std::to_string(m),
                       worst_deficit, 5.0));
  }
  return out;
}

std::vector<CheckResult> antiderivative_suite() {
  std::vector<CheckResult> out;
  constexpr double h = 1e-5;
  for (std::int64_t m : {1, 2, 3, 6}) {
    const double c = ntheory::constant_C(m);
    double worst = 0.0;
    for (double lambda = c / 2.0 + 0.05; lambda <= 5.0; lambda += 0.01) {
      const double x = 2.0 * lambda / c;
      if (std::abs(x - std::round(x)) < 1e-3) {
        continue;
      }
      const double diff =
          (theory::cumulative_G_m(m, lambda + h) - theory::cumulative_G_m(m, lambda - h)) / (2 * h);
      worst = std::max(worst, std::abs(diff - theory::g_m(m, lambda)));
    }
    out.push_back(make("antiderivative", "central difference of G vs g, m=" + std::to_string(m),
                       worst, 1e-3));
  }
  return out;
}

std::vector<CheckResult> counting_suite() {
  std::vector<CheckResult> out;
  double worst_coprime = 0.0;
  double worst_residue = 0.0;
  for (std::int64_t Q : {100, 1000, 10000}) {
    const double tol = 10.0 * Q * std::log(Q + 2.0);
    for (std::int64_t m : {1, 2, 3, 4, 6}) {
      farey::FareySpec spec{Q, farey::CoprimeTo{m}, std::nullopt};
      worst_coprime = std::max(
          worst_coprime, std::abs(static_cast<double>(farey::count(spec)) - farey::expected_count(spec)) / tol);
      for (std::int64_t b = 1; b <= m; ++b) {
        if (std::gcd(b, m) != 1) {
          continue;
        }
        farey::FareySpec rs{Q, farey::ResidueClass{m, b}, std::nullopt};
        worst_residue = std::max(
            worst_residue, std::abs(static_cast<double>(farey::count(rs)) - farey::expected_count(rs)) / tol);
      }
    }
  }
  out.push_back(make("counting", "coprime |N - C_m Q^2/2| / (10 Q ln(Q+2))", worst_coprime, 1.0));
  out.push_back(make("counting", "residue |N - C_m Q^2/(2 phi(m))| / (10 Q ln(Q+2))", worst_residue, 1.0));
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"kfn",   "theorem2", "identities",     "dirichlet", "proposition",
                                              "support", "limit",  "antiderivative", "counting"};
  return names;
}

std::vector<CheckResult> run(std::string_view suite, const VerifyOptions& options) {
  if (suite == "all") {
    std::vector<CheckResult> all;
    for (const auto& name : suite_names()) {
      auto part = run(name, options);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  if (suite == "kfn") return kfn_suite();
  if (suite == "theorem2") return theorem2_suite();
  if (suite == "identities") return identities_suite();
  if (suite == "dirichlet") return dirichlet_suite(options.dirichlet_x);
  if (suite == "proposition") return proposition_suite(options.proposition_qmax);
  if (suite == "support") return support_suite();
  if (suite == "limit") return limit_suite();
  if (suite == "antiderivative") return antiderivative_suite();
  if (suite == "counting") return counting_suite();
  throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
}

}  // namespace fareycorr::verify
