// Copyright 2026 The probplan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROBPLAN_MODEL_HPP_
#define PROBPLAN_MODEL_HPP_

#include <algorithm>
#include <compare>
#include <string>
#include <vector>

namespace probplan {

// An atomic attack step: succeeds independently with probability `prob` and
// costs `cost` (expected running time, abstract units) whether or not it
// succeeds.
struct Action {
  std::string id;
  std::string name;
  double prob = 1.0;
  double cost = 0.0;

  // Throws std::invalid_argument unless 0 <= prob <= 1 and cost is finite
  // and nonnegative.
  void validate() const;

  friend bool operator==(const Action&, const Action&) = default;
};

// Compound expected cost and success probability of a (sub)plan.
struct PlanMetrics {
  double time = 0.0;
  double prob = 0.0;

  friend bool operator==(const PlanMetrics&, const PlanMetrics&) = default;
};

// A cost/probability coefficient such as t/p or t/(1-p). Never divided out:
// comparisons cross-multiply, so a zero denominator is a legal value meaning
// "infinitely bad" (as long as the numerator is positive).
struct Ratio {
  double num = 0.0;
  double den = 1.0;
};

// Total preorder on ratios. (n > 0, 0) is maximal, including n = +inf;
// (0, d > 0) is minimal. Throws std::invalid_argument on NaN, negative
// components, or the undefined ratio (0, 0).
std::weak_ordering ratio_cmp(const Ratio& a, const Ratio& b);

inline bool ratio_less(const Ratio& a, const Ratio& b) {
  return ratio_cmp(a, b) < 0;
}

// The ratio T/P of a metrics pair, the key used to rank OR alternatives.
inline Ratio success_ratio(const PlanMetrics& m) { return {m.time, m.prob}; }

// Stable sort of `items` ascending by `key(item)` under ratio_cmp. Items
// with equal ratios keep their input order.
template <typename T, typename KeyFn>
void stable_sort_by_ratio(std::vector<T>& items, KeyFn key) {
  std::stable_sort(items.begin(), items.end(), [&](const T& a, const T& b) {
    return ratio_cmp(key(a), key(b)) < 0;
  });
}

}  // namespace probplan

#endif  // PROBPLAN_MODEL_HPP_
