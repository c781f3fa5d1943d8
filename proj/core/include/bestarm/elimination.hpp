#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bestarm/samplers.hpp"

namespace bestarm {

// Round-robin over the active set; after each full round (shared per-arm
// count T) drops every arm whose empirical mean is dominated by the leader's
// at radius ls_radius(T). Stops when a single arm remains, which is exactly
// when the LS criterion restricted to the active set fires.
class SuccessiveElimSampler : public Sampler {
 public:
  SuccessiveElimSampler(int n_arms, const ResolvedParams& params);

  const std::vector<int>& active() const { return active_; }
  std::int64_t round() const { return round_; }

 protected:
  int select_arm() override;
  void absorb(int arm, double reward) override;

 private:
  void end_of_round();
  LilParams radius_params_;
  std::vector<int> active_;
  int pos_ = 0;          // cursor into active_
  std::int64_t round_ = 0;  // completed rounds == shared per-arm pull count
};

// Per-arm pull budget of one median-elimination round:
// ceil((2 sigma)^2 * (4 / eps_l^2) * ln(3 / delta_l)).
std::int64_t median_elim_round_budget(double eps_l, double delta_l, double sigma);

// Halving search for an eps-optimal arm, exposed as a pull-driven state
// machine so it can be embedded in a sampler. Rounds use eps_1 = eps/4 and
// delta_1 = delta/2, then eps -> 3/4 eps and delta -> delta/2; each round
// pulls every survivor a fixed budget (round-robin) and keeps the top half
// by round-local mean.
class MedianElimState {
 public:
  MedianElimState(std::vector<int> arms, double eps, double delta, double sigma);

  bool done() const { return done_; }
  int result() const;
  int next_arm() const;
  void update(int arm, double reward);

  const std::vector<int>& survivors() const { return survivors_; }
  std::int64_t budget_per_arm() const { return budget_; }
  int rounds_completed() const { return rounds_; }

 private:
  void start_round();
  void finish_round();

  double eps_l_, delta_l_, sigma_;
  std::vector<int> survivors_;
  std::vector<double> sums_;
  std::vector<std::int64_t> counts_;
  std::int64_t budget_ = 0;
  std::int64_t cycle_ = 0;
  int pos_ = 0;
  int rounds_ = 0;
  bool done_ = false;
};

// Convenience driver over a pull interface; returns the surviving arm.
int median_elimination(const std::function<double(int)>& pull, std::vector<int> arms,
                       double eps, double delta, double sigma);

struct ExpGapRound {
  double eps_r;
  double delta_r;
  std::int64_t budget_per_arm;  // ceil((2 sigma)^2 * (2 / eps_r^2) * ln(2 / delta_r))
};

// Round schedule: eps_r = 2^-r / 4, delta_r = delta / (50 r^3).
ExpGapRound exp_gap_round(int r, double delta, double sigma);

// Stage-wise elimination: each round samples every active arm a fixed budget
// for fresh round-local means, locates a reference arm via median
// elimination, and discards arms whose round mean falls eps_r below the
// reference. Stops at one active arm, or earlier through the LS rule (the
// usual way it stops in practice, since median-elimination budgets dwarf LS
// crossing times).
class ExpGapSampler : public Sampler {
 public:
  ExpGapSampler(int n_arms, const ResolvedParams& params);

  const std::vector<int>& active() const { return active_; }
  int round() const { return round_; }

 protected:
  int select_arm() override;
  void absorb(int arm, double reward) override;

 private:
  void start_round();
  void finish_budget_phase();
  void finish_round(int reference);

  enum class Phase { Budget, Median };

  double delta_;
  double sigma_;
  std::vector<int> active_;
  std::optional<LsRule> ls_;

  Phase phase_ = Phase::Budget;
  int round_ = 0;
  ExpGapRound sched_{};
  std::vector<double> round_sums_;
  std::vector<std::int64_t> round_counts_;
  std::int64_t cycle_ = 0;
  int pos_ = 0;
  std::optional<MedianElimState> median_;
};

}  // namespace bestarm
