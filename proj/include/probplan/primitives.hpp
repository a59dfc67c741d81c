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

#ifndef PROBPLAN_PRIMITIVES_HPP_
#define PROBPLAN_PRIMITIVES_HPP_

#include <span>
#include <string>
#include <vector>

#include "probplan/model.hpp"

namespace probplan {

// An execution order together with the compound metrics of running it.
struct Ordering {
  std::vector<Action> order;
  PlanMetrics metrics;
};

// Expected cost and success probability of running `ordered` until the first
// success (OR group):
//   T = t1 + (1-p1) t2 + ... + (1-p1)...(1-p_{n-1}) tn,  P = 1 - prod(1-pi).
// The empty group yields (0, 0).
PlanMetrics or_metrics(std::span<const Action> ordered);

// Expected cost and success probability of running `ordered` until the first
// failure (AND group):
//   T = t1 + p1 t2 + ... + p1...p_{n-1} tn,  P = prod(pi).
// The empty group yields (0, 1).
PlanMetrics and_metrics(std::span<const Action> ordered);

// The "choose" primitive. Drops actions that can never succeed, then sorts
// the rest ascending by t/p. Equal coefficients break ties by ascending
// cost, then ascending id.
Ordering choose_order(std::span<const Action> actions);

// The "combine" primitive. Orders an AND group ascending by t/(1-p); certain
// actions (p = 1) go last, cheapest first. A group containing an impossible
// action (p = 0) is infeasible and yields an empty order with metrics (0, 0).
Ordering and_order(std::span<const Action> actions);

// A strategy: a group of actions that must all succeed. When `ordered` is
// true the listed order is mandatory, otherwise the solver picks it.
struct StrategyGroup {
  std::string id;
  std::vector<Action> actions;
  bool ordered = true;
};

struct GroupPlan {
  std::string id;
  std::vector<Action> order;  // execution order inside the group
  PlanMetrics metrics;        // (T_G, P_G)
};

struct StrategyPlan {
  std::vector<GroupPlan> groups;  // feasible groups, in execution order
  PlanMetrics overall;
};

// Reduces each group to (T_G, P_G), prunes infeasible groups and orders the
// rest ascending by T_G/P_G. Throws std::invalid_argument on an empty group.
StrategyPlan order_strategies(std::span<const StrategyGroup> groups);

// Collapses a reduced group into a pseudo-action with the group's metrics.
Action as_action(const PlanMetrics& metrics, std::string id,
                 std::string name = {});

enum class GroupMode { kOr, kAnd };

inline constexpr std::size_t kMaxBruteForceActions = 9;

// Exhaustive search over all n! orders for the one with minimum expected
// cost. The first minimum in lexicographic permutation order of the input
// positions wins. Throws std::invalid_argument for n > 9.
Ordering brute_force_best_order(std::span<const Action> actions,
                                GroupMode mode);

}  // namespace probplan

#endif  // PROBPLAN_PRIMITIVES_HPP_
