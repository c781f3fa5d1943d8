#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace bestarm {

// Strict is the finite-LIL bound on its published validity range
// (eps > 0, delta < log(1+eps)/e). PlusTwo shifts the inner log argument by 2,
// which keeps the bound defined for eps = 0 and the full delta range while
// carrying the same guarantees.
enum class BoundVariant { Strict, PlusTwo };

struct LilParams {
  double eps = 0.01;
  double delta = 0.1;
  double scale = 0.5;  // sub-Gaussian scale sigma
  BoundVariant variant = BoundVariant::PlusTwo;
};

struct UcbParams {
  LilParams lil;
  double beta = 1.0;
  double a = 9.0;  // exploration stop parameter
};

// nullopt means the params are valid; otherwise a description of the violation.
std::optional<std::string> validate_params(const LilParams& p);

// Mean-deviation confidence radius at pull count t:
//   (1+sqrt(eps)) * sqrt(2 sigma^2 (1+eps) log(log((1+eps)t [+2]) / delta) / t).
// Strict throws std::domain_error when (1+eps)t <= e, where its inner log-log
// is not usable; PlusTwo is defined for every t >= 1.
double lil_radius(std::int64_t t, const LilParams& p);

// mean + (1+beta) * lil_radius(t, p.lil)
double ucb_index(double mean, std::int64_t t, const UcbParams& p);

// Union-bound stopping radius over n_arms arms (always the +2 inner form):
//   (1+sqrt(eps)) * sqrt(2 sigma^2 (1+eps) log(2n log((1+eps)t + 2)/delta) / t)
double ls_radius(std::int64_t t, int n_arms, const LilParams& p);

// rho(eps) = (2+eps)/eps * (1/log(1+eps))^(1+eps)
double rho(double eps);

// Smallest admissible exploration parameter `a` at (delta, beta); nullopt when
// the denominator 1 - delta - sqrt(sqrt(delta) log(1/delta)) is not positive
// (no admissible a at this delta).
std::optional<double> min_exploration_a(double delta, double beta);

// sqrt(rho delta) + 4 rho delta / (1 - rho delta); nullopt when rho*delta >= 1
// (the guarantee is vacuous there).
std::optional<double> theorem_failure_bound(double delta, double eps);

// delta = (nu * eps / (5 (2+eps)))^(1/(1+eps)) for input confidence nu.
double map_confidence_theory(double nu, double eps);

// delta = nu / 5.
double map_confidence_heuristic(double nu);

}  // namespace bestarm
