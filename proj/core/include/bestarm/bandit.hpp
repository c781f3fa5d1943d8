#pragma once

#include <string>
#include <vector>

#include "bestarm/rng.hpp"

namespace bestarm {

inline constexpr double kDefaultScale = 0.5;

// One arm: Gaussian rewards with the given mean and standard deviation
// `scale` (which is also the sub-Gaussian scale parameter).
struct ArmModel {
  double mean = 0.0;
  double scale = kDefaultScale;
};

enum class ScenarioKind { OneSparse, Alpha, Explicit };

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::OneSparse;
  int n = 2;                          // arms for OneSparse/Explicit; Alpha builds n+1 arms
  double alpha = 0.3;                 // Alpha only, must lie in (0,1)
  std::vector<double> explicit_means; // Explicit only
  double scale = kDefaultScale;
};

// Immutable problem instance: ordered arms with a unique best arm,
// enforced at construction.
class BanditInstance {
 public:
  BanditInstance(std::vector<ArmModel> arms, ScenarioSpec spec, std::string tag);

  int num_arms() const { return static_cast<int>(arms_.size()); }
  const ArmModel& arm(int i) const { return arms_.at(static_cast<std::size_t>(i)); }
  const std::vector<ArmModel>& arms() const { return arms_; }
  const ScenarioSpec& spec() const { return spec_; }
  const std::string& tag() const { return tag_; }
  int best() const { return best_; }
  double gap(int i) const;  // mu_best - mu_i, zero for the best arm
  double max_scale() const;

 private:
  std::vector<ArmModel> arms_;
  ScenarioSpec spec_;
  std::string tag_;
  int best_ = 0;
};

// Scenario label used in output tables, e.g. "one_sparse", "alpha0.3", "explicit".
std::string scenario_label(const ScenarioSpec& spec);

// Builds the instance for a scenario spec. Throws std::invalid_argument on
// invalid specs (n too small, alpha out of range, duplicate maximum mean).
BanditInstance make_scenario(const ScenarioSpec& spec);

// One Gaussian reward draw from the given arm; advances the stream.
double sample_arm(const BanditInstance& instance, int arm, Rng& rng);

// Sum over suboptimal arms of 1/gap^2.
double hardness_h1(const BanditInstance& instance);

// Sum over suboptimal arms of log(log(c/gap^2))/gap^2 with c = e^e, the
// smallest constant keeping every log-log term >= 1 on gaps in (0,1].
// Rejects instances with a gap above 1.
double hardness_h3(const BanditInstance& instance);

// Index of the unique arm with maximal mean.
int best_arm(const BanditInstance& instance);

}  // namespace bestarm
