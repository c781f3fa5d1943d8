#include "bestarm/confidence.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bestarm {

std::optional<std::string> validate_params(const LilParams& p) {
  if (!(p.scale > 0.0)) return "scale must be positive";
  if (!(p.delta > 0.0 && p.delta < 1.0)) return "delta must lie in (0,1)";
  if (p.eps < 0.0) return "eps must be nonnegative";
  if (p.variant == BoundVariant::Strict) {
    if (!(p.eps > 0.0)) return "Strict variant requires eps > 0";
    const double limit = std::log1p(p.eps) / std::numbers::e;
    if (!(p.delta < limit))
      return "Strict variant requires delta < log(1+eps)/e = " + std::to_string(limit);
  }
  return std::nullopt;
}

double lil_radius(std::int64_t t, const LilParams& p) {
  if (t < 1) throw std::domain_error("lil_radius requires t >= 1");
  const double td = static_cast<double>(t);
  double inner;
  if (p.variant == BoundVariant::Strict) {
    const double arg = (1.0 + p.eps) * td;
    if (arg <= std::numbers::e)
      throw std::domain_error("lil_radius: Strict variant undefined for (1+eps)t <= e");
    inner = std::log(arg);
  } else {
    inner = std::log((1.0 + p.eps) * td + 2.0);
  }
  const double level = std::log(inner / p.delta);
  return (1.0 + std::sqrt(p.eps)) *
         std::sqrt(2.0 * p.scale * p.scale * (1.0 + p.eps) * level / td);
}

double ucb_index(double mean, std::int64_t t, const UcbParams& p) {
  return mean + (1.0 + p.beta) * lil_radius(t, p.lil);
}

double ls_radius(std::int64_t t, int n_arms, const LilParams& p) {
  if (t < 1) throw std::domain_error("ls_radius requires t >= 1");
  if (n_arms < 2) throw std::domain_error("ls_radius requires n >= 2 arms");
  const double td = static_cast<double>(t);
  const double inner = std::log((1.0 + p.eps) * td + 2.0);
  const double level = std::log(2.0 * n_arms * inner / p.delta);
  return (1.0 + std::sqrt(p.eps)) *
         std::sqrt(2.0 * p.scale * p.scale * (1.0 + p.eps) * level / td);
}

double rho(double eps) {
  if (!(eps > 0.0)) throw std::domain_error("rho requires eps > 0");
  return (2.0 + eps) / eps * std::pow(1.0 / std::log1p(eps), 1.0 + eps);
}

std::optional<double> min_exploration_a(double delta, double beta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("delta must lie in (0,1)");
  if (!(beta > 0.0)) throw std::domain_error("beta must be positive");
  const double pref = (2.0 + beta) / beta * (2.0 + beta) / beta;
  const double log_inv = std::log(1.0 / delta);
  const double denom = 1.0 - delta - std::sqrt(std::sqrt(delta) * log_inv);
  if (!(denom > 0.0)) return std::nullopt;
  const double num = 1.0 + std::log(2.0 * std::log(pref / delta)) / log_inv;
  return num / denom * pref;
}

std::optional<double> theorem_failure_bound(double delta, double eps) {
  const double rd = rho(eps) * delta;
  if (rd >= 1.0) return std::nullopt;
  return std::sqrt(rd) + 4.0 * rd / (1.0 - rd);
}

double map_confidence_theory(double nu, double eps) {
  if (!(nu > 0.0 && nu < 1.0)) throw std::domain_error("nu must lie in (0,1)");
  if (!(eps > 0.0)) throw std::domain_error("eps must be positive");
  return std::pow(nu * eps / (5.0 * (2.0 + eps)), 1.0 / (1.0 + eps));
}

double map_confidence_heuristic(double nu) {
  if (!(nu > 0.0 && nu < 1.0)) throw std::domain_error("nu must lie in (0,1)");
  return nu / 5.0;
}

}  // namespace bestarm
