#include "bestarm/samplers.hpp"

#include <cmath>
#include <stdexcept>

#include "bestarm/elimination.hpp"

namespace bestarm {

SampleStats::SampleStats(std::vector<std::int64_t> pulls, std::vector<double> sums)
    : pulls_(std::move(pulls)), sums_(std::move(sums)) {
  if (pulls_.size() != sums_.size())
    throw std::invalid_argument("SampleStats: pulls/sums size mismatch");
  for (auto c : pulls_) {
    if (c < 0) throw std::invalid_argument("SampleStats: negative pull count");
    total_ += c;
  }
}

bool SampleStats::all_pulled() const {
  for (auto c : pulls_)
    if (c == 0) return false;
  return true;
}

double SampleStats::mean(int arm) const {
  const auto c = pulls_.at(static_cast<std::size_t>(arm));
  if (c < 1) throw std::logic_error("SampleStats::mean of an unpulled arm");
  return sums_[static_cast<std::size_t>(arm)] / static_cast<double>(c);
}

int anytime_recommendation(const SampleStats& stats) {
  int best = -1;
  double best_mean = 0.0;
  for (int i = 0; i < stats.num_arms(); ++i) {
    const double m = stats.mean(i);  // throws on unpulled arm
    if (best < 0 || m > best_mean) {
      best = i;
      best_mean = m;
    }
  }
  return best;
}

std::optional<int> lil_ucb_should_stop(const SampleStats& stats, double a) {
  const std::int64_t total = stats.total_pulls();
  int winner = -1;
  for (int i = 0; i < stats.num_arms(); ++i) {
    const auto ti = stats.pulls(i);
    if (static_cast<double>(ti) >= 1.0 + a * static_cast<double>(total - ti)) {
      if (winner < 0 || ti > stats.pulls(winner)) winner = i;
    }
  }
  if (winner < 0) return std::nullopt;
  // output is the argmax of pull counts, ties to lowest index
  int top = 0;
  for (int i = 1; i < stats.num_arms(); ++i)
    if (stats.pulls(i) > stats.pulls(top)) top = i;
  return top;
}

int Sampler::next_arm() {
  if (status_.stopped) throw std::logic_error("next_arm called on a stopped sampler");
  if (pending_arm_ >= 0) return pending_arm_;
  pending_arm_ = select_arm();
  return pending_arm_;
}

void Sampler::update(int arm, double reward) {
  if (status_.stopped) throw std::logic_error("update called on a stopped sampler");
  if (pending_arm_ < 0) pending_arm_ = select_arm();
  if (arm != pending_arm_)
    throw std::logic_error("update arm does not match the scheduled arm");
  pending_arm_ = -1;
  stats_.record(arm, reward);
  absorb(arm, reward);
}

std::string algorithm_kind_name(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::LilUcbTheory: return "lil_ucb_theory";
    case AlgorithmKind::LilUcbHeuristic: return "lil_ucb_heuristic";
    case AlgorithmKind::Ucb1: return "ucb1";
    case AlgorithmKind::SuccessiveElim: return "successive_elim";
    case AlgorithmKind::ExpGapElim: return "exp_gap_elim";
    case AlgorithmKind::Nonadaptive: return "nonadaptive";
  }
  return "unknown";
}

std::optional<AlgorithmKind> parse_algorithm_kind(const std::string& name) {
  for (AlgorithmKind k :
       {AlgorithmKind::LilUcbTheory, AlgorithmKind::LilUcbHeuristic, AlgorithmKind::Ucb1,
        AlgorithmKind::SuccessiveElim, AlgorithmKind::ExpGapElim, AlgorithmKind::Nonadaptive}) {
    if (algorithm_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

std::string algorithm_label(const AlgorithmSpec& spec) {
  std::string label = algorithm_kind_name(spec.kind);
  if (spec.ls_enabled) label += "+ls";
  return label;
}

namespace {

void reject_override(const std::optional<double>& field, const char* name,
                     const char* algorithm) {
  if (field)
    throw std::invalid_argument(std::string(algorithm) + " does not consume a '" + name +
                                "' parameter");
}

}  // namespace

ResolvedParams resolve_algorithm(const AlgorithmSpec& spec, int n_arms, double default_sigma) {
  if (n_arms < 2) throw std::invalid_argument("need at least 2 arms");
  if (!(spec.nu > 0.0 && spec.nu < 1.0))
    throw std::invalid_argument("input confidence nu must lie in (0,1)");

  ResolvedParams r;
  r.kind = spec.kind;
  r.ls_enabled = spec.ls_enabled;
  r.nu = spec.nu;
  r.sigma = spec.sigma.value_or(default_sigma);
  if (!(r.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  r.variant = BoundVariant::PlusTwo;

  // With the LS rule enabled the budget is split evenly: the algorithm runs
  // at nu/2 and the rule gets the other nu/2. For ucb1 and nonadaptive the
  // algorithm half is simply unused (their sampling consumes no confidence).
  switch (spec.kind) {
    case AlgorithmKind::LilUcbTheory: {
      r.eps = spec.eps.value_or(0.01);
      r.beta = spec.beta.value_or(1.0);
      r.a = spec.a.value_or(9.0);
      const double nu_alg = spec.ls_enabled ? spec.nu / 2.0 : spec.nu;
      r.delta = spec.delta.value_or(map_confidence_theory(nu_alg, r.eps));
      if (spec.ls_enabled) r.ls_delta = spec.nu / 2.0;
      break;
    }
    case AlgorithmKind::LilUcbHeuristic: {
      if (spec.ls_enabled)
        throw std::invalid_argument("lil_ucb_heuristic stops only via its count rule; "
                                    "ls is not supported");
      r.eps = spec.eps.value_or(0.0);
      r.beta = spec.beta.value_or(0.5);
      r.a = spec.a.value_or(1.0 + 10.0 / static_cast<double>(n_arms));
      r.delta = spec.delta.value_or(map_confidence_heuristic(spec.nu));
      break;
    }
    case AlgorithmKind::Ucb1: {
      reject_override(spec.beta, "beta", "ucb1");
      reject_override(spec.a, "a", "ucb1");
      r.eps = spec.eps.value_or(0.01);  // used by the LS rule only
      if (spec.ls_enabled) r.ls_delta = spec.delta.value_or(spec.nu / 2.0);
      break;
    }
    case AlgorithmKind::SuccessiveElim: {
      reject_override(spec.beta, "beta", "successive_elim");
      reject_override(spec.a, "a", "successive_elim");
      r.eps = spec.eps.value_or(0.01);
      // elimination radius and stopping are the same rule; full budget
      r.delta = spec.delta.value_or(spec.nu);
      break;
    }
    case AlgorithmKind::ExpGapElim: {
      reject_override(spec.beta, "beta", "exp_gap_elim");
      reject_override(spec.a, "a", "exp_gap_elim");
      r.eps = spec.eps.value_or(0.01);  // used by the LS rule only
      const double nu_alg = spec.ls_enabled ? spec.nu / 2.0 : spec.nu;
      r.delta = spec.delta.value_or(nu_alg);
      if (spec.ls_enabled) r.ls_delta = spec.nu / 2.0;
      break;
    }
    case AlgorithmKind::Nonadaptive: {
      reject_override(spec.beta, "beta", "nonadaptive");
      reject_override(spec.a, "a", "nonadaptive");
      r.eps = spec.eps.value_or(0.01);
      if (spec.ls_enabled) r.ls_delta = spec.delta.value_or(spec.nu / 2.0);
      break;
    }
  }

  if (r.delta < 0.0 || r.delta >= 1.0 || (r.delta == 0.0 && r.kind != AlgorithmKind::Ucb1 &&
                                          r.kind != AlgorithmKind::Nonadaptive))
    throw std::invalid_argument("resolved delta must lie in (0,1)");
  if (r.ls_enabled && !(r.ls_delta > 0.0 && r.ls_delta < 1.0))
    throw std::invalid_argument("resolved ls delta must lie in (0,1)");
  return r;
}

std::unique_ptr<Sampler> make_sampler(const AlgorithmSpec& spec, int n_arms,
                                      double default_sigma, Rng& rng) {
  return make_sampler(resolve_algorithm(spec, n_arms, default_sigma), n_arms, rng);
}

std::unique_ptr<Sampler> make_sampler(const ResolvedParams& params, int n_arms, Rng& rng) {
  switch (params.kind) {
    case AlgorithmKind::LilUcbTheory:
    case AlgorithmKind::LilUcbHeuristic:
      return std::make_unique<LilUcbSampler>(n_arms, params);
    case AlgorithmKind::Ucb1:
      return std::make_unique<Ucb1Sampler>(n_arms, params);
    case AlgorithmKind::SuccessiveElim:
      return std::make_unique<SuccessiveElimSampler>(n_arms, params);
    case AlgorithmKind::ExpGapElim:
      return std::make_unique<ExpGapSampler>(n_arms, params);
    case AlgorithmKind::Nonadaptive:
      return std::make_unique<NonadaptiveSampler>(n_arms, params, rng);
  }
  throw std::invalid_argument("unknown algorithm kind");
}

namespace {

LilParams ls_params_of(const ResolvedParams& p) {
  return LilParams{p.eps, p.ls_delta, p.sigma, BoundVariant::PlusTwo};
}

}  // namespace

// ---------------------------------------------------------------------------
// lil'UCB

LilUcbSampler::LilUcbSampler(int n_arms, const ResolvedParams& params)
    : Sampler(n_arms),
      ucb_{LilParams{params.eps, params.delta, params.sigma, params.variant}, params.beta,
           params.a},
      a_(params.a) {
  if (auto why = validate_params(ucb_.lil))
    throw std::invalid_argument("lil_ucb: " + *why);
  if (params.ls_enabled) ls_.emplace(n_arms, ls_params_of(params));
}

double LilUcbSampler::index_of(int arm) const {
  return ucb_index(stats_.mean(arm), stats_.pulls(arm), ucb_);
}

int LilUcbSampler::select_arm() {
  if (init_next_ < stats_.num_arms()) return init_next_;
  return indices_.top();
}

void LilUcbSampler::absorb(int arm, double reward) {
  (void)reward;
  if (init_next_ < stats_.num_arms()) {
    ++init_next_;
    if (init_next_ == stats_.num_arms()) {
      std::vector<double> values(static_cast<std::size_t>(stats_.num_arms()));
      for (int i = 0; i < stats_.num_arms(); ++i)
        values[static_cast<std::size_t>(i)] = index_of(i);
      indices_.reset(values);
      if (ls_)
        for (int i = 0; i < stats_.num_arms(); ++i)
          ls_->update(i, stats_.mean(i), stats_.pulls(i));
    }
    return;  // the count rule is first evaluated once every arm has one pull
  }

  indices_.update(arm, index_of(arm));
  // Only the pulled arm's side of the count inequality improves, so checking
  // it alone is exact.
  const auto ti = stats_.pulls(arm);
  if (static_cast<double>(ti) >= 1.0 + a_ * static_cast<double>(stats_.total_pulls() - ti)) {
    int top = 0;
    for (int i = 1; i < stats_.num_arms(); ++i)
      if (stats_.pulls(i) > stats_.pulls(top)) top = i;
    status_ = Status{true, top};
    return;
  }
  if (ls_) {
    ls_->update(arm, stats_.mean(arm), stats_.pulls(arm));
    if (auto hit = ls_->check()) status_ = Status{true, *hit};
  }
}

// ---------------------------------------------------------------------------
// UCB1

Ucb1Sampler::Ucb1Sampler(int n_arms, const ResolvedParams& params)
    : Sampler(n_arms), sigma_(params.sigma) {
  if (params.ls_enabled) ls_.emplace(n_arms, ls_params_of(params));
}

int Ucb1Sampler::select_arm() {
  if (init_next_ < stats_.num_arms()) return init_next_;
  const double log_t = std::log(static_cast<double>(stats_.total_pulls()));
  int best = 0;
  double best_index = 0.0;
  for (int i = 0; i < stats_.num_arms(); ++i) {
    const double index =
        stats_.mean(i) +
        2.0 * sigma_ * std::sqrt(2.0 * log_t / static_cast<double>(stats_.pulls(i)));
    if (i == 0 || index > best_index) {
      best = i;
      best_index = index;
    }
  }
  return best;
}

void Ucb1Sampler::absorb(int arm, double reward) {
  (void)reward;
  if (init_next_ < stats_.num_arms()) ++init_next_;
  if (ls_) {
    ls_->update(arm, stats_.mean(arm), stats_.pulls(arm));
    if (auto hit = ls_->check()) status_ = Status{true, *hit};
  }
}

// ---------------------------------------------------------------------------
// Nonadaptive

NonadaptiveSampler::NonadaptiveSampler(int n_arms, const ResolvedParams& params, Rng& rng)
    : Sampler(n_arms), perm_(rng.permutation(n_arms)) {
  if (params.ls_enabled) ls_.emplace(n_arms, ls_params_of(params));
}

int NonadaptiveSampler::select_arm() {
  return perm_[static_cast<std::size_t>(stats_.total_pulls() %
                                        static_cast<std::int64_t>(perm_.size()))];
}

void NonadaptiveSampler::absorb(int arm, double reward) {
  (void)reward;
  if (ls_) {
    ls_->update(arm, stats_.mean(arm), stats_.pulls(arm));
    if (auto hit = ls_->check()) status_ = Status{true, *hit};
  }
}

}  // namespace bestarm
