#pragma once

#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bestarm {

// Ordered index over per-arm scores. top() is the arm with the largest score,
// ties broken by lowest arm index; updating one arm costs O(log n). This is
// the structure that keeps UCB-style selection at O(log n) per step when only
// the pulled arm's score changes.
class ArgmaxSet {
 public:
  ArgmaxSet() = default;

  explicit ArgmaxSet(std::span<const double> values) { reset(values); }

  void reset(std::span<const double> values) {
    order_.clear();
    values_.assign(values.begin(), values.end());
    for (int i = 0; i < static_cast<int>(values_.size()); ++i)
      order_.emplace(values_[static_cast<std::size_t>(i)], i);
  }

  int size() const { return static_cast<int>(values_.size()); }
  bool empty() const { return values_.empty(); }

  double value(int arm) const { return values_.at(static_cast<std::size_t>(arm)); }

  void update(int arm, double value) {
    auto& slot = values_.at(static_cast<std::size_t>(arm));
    order_.erase({slot, arm});
    slot = value;
    order_.emplace(value, arm);
  }

  int top() const {
    if (order_.empty()) throw std::logic_error("ArgmaxSet::top on empty set");
    return order_.begin()->second;
  }

  double top_value() const { return order_.begin()->first; }

  // Best arm ignoring `arm`; requires size() >= 2.
  int top_excluding(int arm) const {
    auto it = order_.begin();
    if (it->second == arm) ++it;
    if (it == order_.end()) throw std::logic_error("ArgmaxSet::top_excluding needs 2+ arms");
    return it->second;
  }

 private:
  struct Desc {
    bool operator()(const std::pair<double, int>& a, const std::pair<double, int>& b) const {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    }
  };
  std::set<std::pair<double, int>, Desc> order_;
  std::vector<double> values_;
};

}  // namespace bestarm
