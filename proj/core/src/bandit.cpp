#include "bestarm/bandit.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace bestarm {

namespace {

int unique_argmax_mean(const std::vector<ArmModel>& arms) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(arms.size()); ++i) {
    if (arms[static_cast<std::size_t>(i)].mean > arms[static_cast<std::size_t>(best)].mean) best = i;
  }
  for (int i = 0; i < static_cast<int>(arms.size()); ++i) {
    if (i != best &&
        arms[static_cast<std::size_t>(i)].mean == arms[static_cast<std::size_t>(best)].mean) {
      throw std::invalid_argument("bandit instance has no unique best arm");
    }
  }
  return best;
}

std::string trimmed_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

}  // namespace

BanditInstance::BanditInstance(std::vector<ArmModel> arms, ScenarioSpec spec, std::string tag)
    : arms_(std::move(arms)), spec_(std::move(spec)), tag_(std::move(tag)) {
  if (arms_.size() < 2) throw std::invalid_argument("bandit instance needs at least 2 arms");
  for (const auto& a : arms_) {
    if (!(a.scale > 0.0)) throw std::invalid_argument("arm scale must be positive");
    if (!std::isfinite(a.mean)) throw std::invalid_argument("arm mean must be finite");
  }
  best_ = unique_argmax_mean(arms_);
}

double BanditInstance::gap(int i) const {
  return arms_[static_cast<std::size_t>(best_)].mean - arms_.at(static_cast<std::size_t>(i)).mean;
}

double BanditInstance::max_scale() const {
  double s = 0.0;
  for (const auto& a : arms_) s = std::max(s, a.scale);
  return s;
}

std::string scenario_label(const ScenarioSpec& spec) {
  switch (spec.kind) {
    case ScenarioKind::OneSparse:
      return "one_sparse";
    case ScenarioKind::Alpha:
      return "alpha" + trimmed_double(spec.alpha);
    case ScenarioKind::Explicit:
      return "explicit";
  }
  return "unknown";
}

BanditInstance make_scenario(const ScenarioSpec& raw) {
  ScenarioSpec spec = raw;
  if (spec.kind == ScenarioKind::Explicit)
    spec.n = static_cast<int>(spec.explicit_means.size());
  if (!(spec.scale > 0.0)) throw std::invalid_argument("scenario scale must be positive");
  std::vector<ArmModel> arms;
  switch (spec.kind) {
    case ScenarioKind::OneSparse: {
      if (spec.n < 2) throw std::invalid_argument("one_sparse scenario requires n >= 2");
      arms.resize(static_cast<std::size_t>(spec.n), ArmModel{0.0, spec.scale});
      arms[0].mean = 0.5;
      break;
    }
    case ScenarioKind::Alpha: {
      if (spec.n < 1) throw std::invalid_argument("alpha scenario requires n >= 1");
      if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0,1)");
      arms.reserve(static_cast<std::size_t>(spec.n) + 1);
      arms.push_back(ArmModel{1.0, spec.scale});
      for (int i = 1; i <= spec.n; ++i) {
        const double mu = 1.0 - std::pow(static_cast<double>(i) / spec.n, spec.alpha);
        arms.push_back(ArmModel{mu, spec.scale});
      }
      break;
    }
    case ScenarioKind::Explicit: {
      if (spec.explicit_means.size() < 2)
        throw std::invalid_argument("explicit scenario requires at least 2 means");
      arms.reserve(spec.explicit_means.size());
      for (double mu : spec.explicit_means) arms.push_back(ArmModel{mu, spec.scale});
      break;
    }
  }
  return BanditInstance(std::move(arms), spec, scenario_label(spec));
}

double sample_arm(const BanditInstance& instance, int arm, Rng& rng) {
  if (arm < 0 || arm >= instance.num_arms()) throw std::out_of_range("arm index out of range");
  const ArmModel& a = instance.arm(arm);
  return rng.gaussian(a.mean, a.scale);
}

double hardness_h1(const BanditInstance& instance) {
  double h = 0.0;
  for (int i = 0; i < instance.num_arms(); ++i) {
    if (i == instance.best()) continue;
    const double d = instance.gap(i);
    h += 1.0 / (d * d);
  }
  return h;
}

double hardness_h3(const BanditInstance& instance) {
  const double c = std::exp(std::numbers::e);
  double h = 0.0;
  for (int i = 0; i < instance.num_arms(); ++i) {
    if (i == instance.best()) continue;
    const double d = instance.gap(i);
    if (d > 1.0) throw std::domain_error("hardness_h3 requires all gaps in (0,1]");
    h += std::log(std::log(c / (d * d))) / (d * d);
  }
  return h;
}

int best_arm(const BanditInstance& instance) { return instance.best(); }

}  // namespace bestarm
