#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bestarm/argmax_set.hpp"
#include "bestarm/bandit.hpp"
#include "bestarm/confidence.hpp"
#include "bestarm/ls_rule.hpp"
#include "bestarm/rng.hpp"

namespace bestarm {

// Per-arm pull counts and running reward sums; empirical means are derived.
class SampleStats {
 public:
  explicit SampleStats(int n_arms)
      : pulls_(static_cast<std::size_t>(n_arms), 0),
        sums_(static_cast<std::size_t>(n_arms), 0.0) {}

  SampleStats(std::vector<std::int64_t> pulls, std::vector<double> sums);

  int num_arms() const { return static_cast<int>(pulls_.size()); }
  std::int64_t pulls(int arm) const { return pulls_.at(static_cast<std::size_t>(arm)); }
  double reward_sum(int arm) const { return sums_.at(static_cast<std::size_t>(arm)); }
  std::int64_t total_pulls() const { return total_; }
  bool all_pulled() const;

  double mean(int arm) const;  // requires pulls(arm) >= 1

  void record(int arm, double reward) {
    pulls_.at(static_cast<std::size_t>(arm)) += 1;
    sums_[static_cast<std::size_t>(arm)] += reward;
    ++total_;
  }

 private:
  std::vector<std::int64_t> pulls_;
  std::vector<double> sums_;
  std::int64_t total_ = 0;
};

// Arm with the highest empirical mean, ties to the lowest index.
// Throws std::logic_error if any arm is unpulled.
int anytime_recommendation(const SampleStats& stats);

// Count-based stopping test: the arm i with T_i >= 1 + a * sum_{j!=i} T_j,
// reported as the argmax of pull counts (ties to lowest index), or nullopt.
std::optional<int> lil_ucb_should_stop(const SampleStats& stats, double a);

struct Status {
  bool stopped = false;
  int recommended = -1;
};

// Common pull/update/status contract shared by all algorithms. A sampler is
// driven as: arm = next_arm(); reward observed; update(arm, reward); repeat
// until status().stopped. next_arm after stopping throws std::logic_error,
// as does update() with an arm other than the one last scheduled.
class Sampler {
 public:
  virtual ~Sampler() = default;

  int next_arm();
  void update(int arm, double reward);

  const Status& status() const { return status_; }
  const SampleStats& stats() const { return stats_; }
  int anytime_best() const { return anytime_recommendation(stats_); }

 protected:
  explicit Sampler(int n_arms) : stats_(n_arms) {}
  virtual int select_arm() = 0;
  virtual void absorb(int arm, double reward) = 0;

  SampleStats stats_;
  Status status_;

 private:
  int pending_arm_ = -1;
};

enum class AlgorithmKind {
  LilUcbTheory,
  LilUcbHeuristic,
  Ucb1,
  SuccessiveElim,
  ExpGapElim,
  Nonadaptive,
};

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::LilUcbHeuristic;
  double nu = 0.1;        // input confidence
  bool ls_enabled = false;
  // overrides; presets fill everything left unset
  std::optional<double> eps;
  std::optional<double> beta;
  std::optional<double> a;
  std::optional<double> delta;
  std::optional<double> sigma;
};

// Fully resolved parameters for one algorithm on an n-arm instance, as used
// for construction and echoed into run metadata.
struct ResolvedParams {
  AlgorithmKind kind;
  bool ls_enabled = false;
  double nu = 0.1;
  double eps = 0.0;
  double beta = 0.0;
  double a = 0.0;
  double delta = 0.0;   // algorithm-internal confidence (0 when unused)
  double sigma = kDefaultScale;
  double ls_delta = 0.0;  // confidence assigned to the stopping rule (0 when unused)
  BoundVariant variant = BoundVariant::PlusTwo;
};

std::string algorithm_kind_name(AlgorithmKind kind);
std::optional<AlgorithmKind> parse_algorithm_kind(const std::string& name);
// Label used in output tables: kind name plus "+ls" when the rule is enabled.
std::string algorithm_label(const AlgorithmSpec& spec);

// Applies presets and overrides; throws std::invalid_argument on conflicts
// (e.g. the heuristic preset with ls enabled, or overrides the algorithm
// does not consume).
ResolvedParams resolve_algorithm(const AlgorithmSpec& spec, int n_arms, double default_sigma);

// Constructs a ready-to-run sampler. `rng` seeds any randomized initial state
// (the nonadaptive permutation); reward randomness stays with the caller.
std::unique_ptr<Sampler> make_sampler(const AlgorithmSpec& spec, int n_arms,
                                      double default_sigma, Rng& rng);
std::unique_ptr<Sampler> make_sampler(const ResolvedParams& params, int n_arms, Rng& rng);

// UCB selection on finite-LIL indices with the count-based stop. The ordered
// index set makes each step O(log n).
class LilUcbSampler : public Sampler {
 public:
  LilUcbSampler(int n_arms, const ResolvedParams& params);

 protected:
  int select_arm() override;
  void absorb(int arm, double reward) override;

 private:
  double index_of(int arm) const;
  UcbParams ucb_;
  double a_;
  int init_next_ = 0;
  ArgmaxSet indices_;
  std::optional<LsRule> ls_;
};

// Classical UCB index mu_hat + 2 sigma sqrt(2 log t / T_i); the bonus depends
// on the global t, so selection rescans all arms. Stops only via the LS rule.
class Ucb1Sampler : public Sampler {
 public:
  Ucb1Sampler(int n_arms, const ResolvedParams& params);

 protected:
  int select_arm() override;
  void absorb(int arm, double reward) override;

 private:
  double sigma_;
  int init_next_ = 0;
  std::optional<LsRule> ls_;
};

// Cycles through a random permutation; stops only via the LS rule.
class NonadaptiveSampler : public Sampler {
 public:
  NonadaptiveSampler(int n_arms, const ResolvedParams& params, Rng& rng);

  const std::vector<int>& permutation() const { return perm_; }

 protected:
  int select_arm() override;
  void absorb(int arm, double reward) override;

 private:
  std::vector<int> perm_;
  std::optional<LsRule> ls_;
};

}  // namespace bestarm
