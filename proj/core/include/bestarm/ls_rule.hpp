#pragma once

#include <optional>

#include "bestarm/argmax_set.hpp"
#include "bestarm/confidence.hpp"

namespace bestarm {

class SampleStats;

// Union-bound stopping check over full per-arm statistics: returns the
// empirical-best arm once its lower confidence bound weakly dominates every
// other arm's upper bound, else nullopt. Requires every arm pulled at least
// once. O(n) scan; the samplers use the incremental LsRule below instead.
std::optional<int> ls_should_stop(const SampleStats& stats, const LilParams& p, int n_arms);

// Incremental form of ls_should_stop. Only the pulled arm's bounds change
// between steps, so ordered sets keep each check at O(log n).
class LsRule {
 public:
  LsRule(int n_arms, LilParams p);

  void update(int arm, double mean, std::int64_t pulls);
  bool ready() const { return seen_ == n_; }
  std::optional<int> check() const;
  const LilParams& params() const { return p_; }

 private:
  int n_ = 0;
  int seen_ = 0;
  LilParams p_;
  ArgmaxSet means_;
  ArgmaxSet uppers_;
  std::vector<double> lowers_;
  std::vector<bool> pulled_;
};

}  // namespace bestarm
