#include "bestarm/elimination.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bestarm {

namespace {

// budgets can exceed any runnable horizon at deep rounds; keep them finite
constexpr double kBudgetCap = 4.0e18;

std::int64_t ceil_clamped(double x) {
  if (x > kBudgetCap) x = kBudgetCap;
  return static_cast<std::int64_t>(std::ceil(x));
}

}  // namespace

// ---------------------------------------------------------------------------
// Successive elimination

SuccessiveElimSampler::SuccessiveElimSampler(int n_arms, const ResolvedParams& params)
    : Sampler(n_arms),
      radius_params_{params.eps, params.delta, params.sigma, BoundVariant::PlusTwo} {
  active_.resize(static_cast<std::size_t>(n_arms));
  for (int i = 0; i < n_arms; ++i) active_[static_cast<std::size_t>(i)] = i;
}

int SuccessiveElimSampler::select_arm() { return active_[static_cast<std::size_t>(pos_)]; }

void SuccessiveElimSampler::absorb(int arm, double reward) {
  (void)arm;
  (void)reward;
  ++pos_;
  if (pos_ == static_cast<int>(active_.size())) {
    pos_ = 0;
    ++round_;
    end_of_round();
  }
}

void SuccessiveElimSampler::end_of_round() {
  int leader = active_[0];
  for (int j : active_)
    if (stats_.mean(j) > stats_.mean(leader)) leader = j;

  const double radius = ls_radius(round_, stats_.num_arms(), radius_params_);
  std::vector<int> kept;
  kept.reserve(active_.size());
  for (int j : active_) {
    if (j == leader || stats_.mean(leader) - stats_.mean(j) < 2.0 * radius) kept.push_back(j);
  }
  active_ = std::move(kept);
  if (active_.size() == 1) status_ = Status{true, active_[0]};
}

// ---------------------------------------------------------------------------
// Median elimination

std::int64_t median_elim_round_budget(double eps_l, double delta_l, double sigma) {
  const double two_sigma = 2.0 * sigma;
  return ceil_clamped(two_sigma * two_sigma * (4.0 / (eps_l * eps_l)) *
                      std::log(3.0 / delta_l));
}

MedianElimState::MedianElimState(std::vector<int> arms, double eps, double delta, double sigma)
    : eps_l_(eps / 4.0), delta_l_(delta / 2.0), sigma_(sigma), survivors_(std::move(arms)) {
  if (survivors_.empty()) throw std::invalid_argument("median elimination needs >= 1 arm");
  if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("median elimination requires eps, delta in (0,1)");
  if (survivors_.size() == 1) {
    done_ = true;
    return;
  }
  start_round();
}

void MedianElimState::start_round() {
  sums_.assign(survivors_.size(), 0.0);
  counts_.assign(survivors_.size(), 0);
  budget_ = median_elim_round_budget(eps_l_, delta_l_, sigma_);
  cycle_ = 0;
  pos_ = 0;
}

int MedianElimState::result() const {
  if (!done_) throw std::logic_error("median elimination still running");
  return survivors_[0];
}

int MedianElimState::next_arm() const {
  if (done_) throw std::logic_error("median elimination already done");
  return survivors_[static_cast<std::size_t>(pos_)];
}

void MedianElimState::update(int arm, double reward) {
  if (done_) throw std::logic_error("median elimination already done");
  if (arm != survivors_[static_cast<std::size_t>(pos_)])
    throw std::logic_error("median elimination: unexpected arm");
  sums_[static_cast<std::size_t>(pos_)] += reward;
  counts_[static_cast<std::size_t>(pos_)] += 1;
  ++pos_;
  if (pos_ == static_cast<int>(survivors_.size())) {
    pos_ = 0;
    ++cycle_;
    if (cycle_ == budget_) finish_round();
  }
}

void MedianElimState::finish_round() {
  // keep the half strictly above the median round mean
  const auto k = survivors_.size();
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ma = sums_[a] / static_cast<double>(counts_[a]);
    const double mb = sums_[b] / static_cast<double>(counts_[b]);
    if (ma != mb) return ma > mb;
    return survivors_[a] < survivors_[b];
  });
  const std::size_t keep = std::max<std::size_t>(1, k / 2);
  std::vector<int> next;
  next.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) next.push_back(survivors_[order[i]]);
  std::sort(next.begin(), next.end());
  survivors_ = std::move(next);
  ++rounds_;
  if (survivors_.size() == 1) {
    done_ = true;
    return;
  }
  eps_l_ *= 0.75;
  delta_l_ *= 0.5;
  start_round();
}

int median_elimination(const std::function<double(int)>& pull, std::vector<int> arms,
                       double eps, double delta, double sigma) {
  MedianElimState state(std::move(arms), eps, delta, sigma);
  while (!state.done()) {
    const int arm = state.next_arm();
    state.update(arm, pull(arm));
  }
  return state.result();
}

// ---------------------------------------------------------------------------
// Exponential-gap elimination

ExpGapRound exp_gap_round(int r, double delta, double sigma) {
  if (r < 1) throw std::invalid_argument("round index starts at 1");
  const double eps_r = std::ldexp(1.0, -r) / 4.0;
  const double delta_r =
      delta / (50.0 * static_cast<double>(r) * static_cast<double>(r) * static_cast<double>(r));
  const double two_sigma = 2.0 * sigma;
  const std::int64_t budget = ceil_clamped(two_sigma * two_sigma * (2.0 / (eps_r * eps_r)) *
                                           std::log(2.0 / delta_r));
  return ExpGapRound{eps_r, delta_r, budget};
}

ExpGapSampler::ExpGapSampler(int n_arms, const ResolvedParams& params)
    : Sampler(n_arms), delta_(params.delta), sigma_(params.sigma) {
  active_.resize(static_cast<std::size_t>(n_arms));
  for (int i = 0; i < n_arms; ++i) active_[static_cast<std::size_t>(i)] = i;
  if (params.ls_enabled) ls_.emplace(n_arms, LilParams{params.eps, params.ls_delta,
                                                       params.sigma, BoundVariant::PlusTwo});
  start_round();
}

void ExpGapSampler::start_round() {
  ++round_;
  sched_ = exp_gap_round(round_, delta_, sigma_);
  round_sums_.assign(static_cast<std::size_t>(stats_.num_arms()), 0.0);
  round_counts_.assign(static_cast<std::size_t>(stats_.num_arms()), 0);
  cycle_ = 0;
  pos_ = 0;
  phase_ = Phase::Budget;
  median_.reset();
}

int ExpGapSampler::select_arm() {
  if (phase_ == Phase::Budget) return active_[static_cast<std::size_t>(pos_)];
  return median_->next_arm();
}

void ExpGapSampler::absorb(int arm, double reward) {
  if (phase_ == Phase::Budget) {
    round_sums_[static_cast<std::size_t>(arm)] += reward;
    round_counts_[static_cast<std::size_t>(arm)] += 1;
    ++pos_;
    if (pos_ == static_cast<int>(active_.size())) {
      pos_ = 0;
      ++cycle_;
      if (cycle_ == sched_.budget_per_arm) finish_budget_phase();
    }
  } else {
    median_->update(arm, reward);
    if (median_->done()) finish_round(median_->result());
  }
  if (!status_.stopped && ls_) {
    ls_->update(arm, stats_.mean(arm), stats_.pulls(arm));
    if (auto hit = ls_->check()) status_ = Status{true, *hit};
  }
}

void ExpGapSampler::finish_budget_phase() {
  phase_ = Phase::Median;
  median_.emplace(active_, sched_.eps_r / 2.0, sched_.delta_r, sigma_);
  if (median_->done()) finish_round(median_->result());
}

void ExpGapSampler::finish_round(int reference) {
  const double ref_mean = round_sums_[static_cast<std::size_t>(reference)] /
                          static_cast<double>(round_counts_[static_cast<std::size_t>(reference)]);
  std::vector<int> kept;
  kept.reserve(active_.size());
  for (int j : active_) {
    const double mj = round_sums_[static_cast<std::size_t>(j)] /
                      static_cast<double>(round_counts_[static_cast<std::size_t>(j)]);
    if (mj >= ref_mean - sched_.eps_r) kept.push_back(j);
  }
  active_ = std::move(kept);
  if (active_.size() == 1) {
    status_ = Status{true, active_[0]};
    return;
  }
  start_round();
}

}  // namespace bestarm
