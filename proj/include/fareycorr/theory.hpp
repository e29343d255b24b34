#pragma once

// Closed-form limiting pair correlation of Farey fractions, for the full
// sequence, for denominators coprime to m, and for denominators in a
// reduced residue class mod m.
//
// Densities g are finite sums over Delta up to a cutoff proportional to
// lambda; cumulative functions G are their antiderivatives from 0. All are
// identically zero below the support edge C_m / 2 (resp. 1 / kappa_m).

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace fareycorr::theory {

enum class Variant { Full, Coprime, Residue };

Variant parse_variant(std::string_view text);

struct TheoryParams {
  std::int64_t m = 1;
  Variant variant = Variant::Coprime;
  bool cumulative = false;
};

/// Largest integer Delta with Delta <= x. Values within a relative 1e-12 of an
/// integer snap to it.
std::int64_t cutoff_bound(double x);

struct CutoffIndex {
  double lambda = 0.0;
  std::int64_t bound = 0;
};
/// Cutoff floor(2 lambda / C_m); for Residue, floor(kappa_m lambda).
CutoffIndex cutoff_index(std::int64_t m, double lambda, Variant variant = Variant::Coprime);

double g_full(double lambda);
double g_m(std::int64_t m, double lambda);
/// Antiderivative of g_m, with the gcd factor (Delta,m)/phi((Delta,m)) in every term.
double cumulative_G_m(std::int64_t m, double lambda);
/// Residue-class density, evaluated through its own kappa_m sum.
double g_tilde(std::int64_t m, double lambda);
/// Residue-class cumulative, equal to cumulative_G_m(m, phi(m) lambda) / phi(m).
double cumulative_G_tilde(std::int64_t m, double lambda);

/// The explicit m = 2 density, written with 3 zeta(2) in place of 2 / C_2.
double g_two_explicit(double lambda);

/// lambda * (g_m(m, lambda) - 1).
double limit_deficit(std::int64_t m, double lambda);

struct DirichletCheck {
  double lhs = 0.0;
  double main_term = 0.0;
  double relative_gap() const { return lhs / main_term - 1.0; }
};
/// sum_{Delta <= x} Delta k_fn(Delta) log(x / Delta) against c_m(2) x^2 / (4 zeta(2)).
DirichletCheck dirichlet_partial_sum_check(std::int64_t m, std::int64_t x);

double evaluate(const TheoryParams& params, double lambda);

/// Grid evaluation, one lambda per OpenMP iteration.
std::vector<double> evaluate_grid(const TheoryParams& params, std::span<const double> lambdas);
std::vector<double> evaluate_grid_serial(const TheoryParams& params,
                                         std::span<const double> lambdas);

}  // namespace fareycorr::theory
