#include "bestarm/ls_rule.hpp"

#include <limits>

#include "bestarm/samplers.hpp"

namespace bestarm {

std::optional<int> ls_should_stop(const SampleStats& stats, const LilParams& p, int n_arms) {
  if (!stats.all_pulled()) return std::nullopt;
  const int leader = anytime_recommendation(stats);
  const double lower = stats.mean(leader) - ls_radius(stats.pulls(leader), n_arms, p);
  for (int j = 0; j < stats.num_arms(); ++j) {
    if (j == leader) continue;
    if (lower < stats.mean(j) + ls_radius(stats.pulls(j), n_arms, p)) return std::nullopt;
  }
  return leader;
}

LsRule::LsRule(int n_arms, LilParams p)
    : n_(n_arms),
      p_(p),
      lowers_(static_cast<std::size_t>(n_arms), -std::numeric_limits<double>::infinity()),
      pulled_(static_cast<std::size_t>(n_arms), false) {
  const std::vector<double> neg(static_cast<std::size_t>(n_arms),
                                -std::numeric_limits<double>::infinity());
  const std::vector<double> pos(static_cast<std::size_t>(n_arms),
                                std::numeric_limits<double>::infinity());
  means_.reset(neg);
  uppers_.reset(pos);
}

void LsRule::update(int arm, double mean, std::int64_t pulls) {
  if (!pulled_[static_cast<std::size_t>(arm)]) {
    pulled_[static_cast<std::size_t>(arm)] = true;
    ++seen_;
  }
  const double radius = ls_radius(pulls, n_, p_);
  means_.update(arm, mean);
  uppers_.update(arm, mean + radius);
  lowers_[static_cast<std::size_t>(arm)] = mean - radius;
}

std::optional<int> LsRule::check() const {
  if (!ready()) return std::nullopt;
  const int leader = means_.top();
  const int rival = uppers_.top_excluding(leader);
  if (lowers_[static_cast<std::size_t>(leader)] >= uppers_.value(rival)) return leader;
  return std::nullopt;
}

}  // namespace bestarm
