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

#include "probplan/primitives.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace probplan {
namespace {

void validate_all(std::span<const Action> actions) {
  for (const Action& a : actions) a.validate();
}

// Ratio first, then cheaper, then lexicographically smaller id.
template <typename KeyFn>
bool ranked_before(const Action& a, const Action& b, KeyFn key) {
  const auto c = ratio_cmp(key(a), key(b));
  if (c != 0) return c < 0;
  if (a.cost != b.cost) return a.cost < b.cost;
  return a.id < b.id;
}

}  // namespace

PlanMetrics or_metrics(std::span<const Action> ordered) {
  // P accumulates sum p_i prod_{j<i} (1 - p_j), which equals 1 - prod(1 - p_i)
  // but is exact for a single action and keeps small probabilities precise.
  double time = 0.0;
  double prob = 0.0;
  double all_failed = 1.0;
  for (const Action& a : ordered) {
    time += all_failed * a.cost;
    prob += all_failed * a.prob;
    all_failed *= 1.0 - a.prob;
  }
  return {time, prob};
}

PlanMetrics and_metrics(std::span<const Action> ordered) {
  double time = 0.0;
  double all_succeeded = 1.0;
  for (const Action& a : ordered) {
    time += all_succeeded * a.cost;
    all_succeeded *= a.prob;
  }
  return {time, all_succeeded};
}

Ordering choose_order(std::span<const Action> actions) {
  validate_all(actions);
  Ordering out;
  for (const Action& a : actions) {
    if (a.prob > 0.0) out.order.push_back(a);
  }
  const auto key = [](const Action& a) { return Ratio{a.cost, a.prob}; };
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](const Action& a, const Action& b) {
                     return ranked_before(a, b, key);
                   });
  out.metrics = or_metrics(out.order);
  return out;
}

Ordering and_order(std::span<const Action> actions) {
  validate_all(actions);
  Ordering out;
  if (std::any_of(actions.begin(), actions.end(),
                  [](const Action& a) { return a.prob == 0.0; })) {
    out.metrics = {0.0, 0.0};
    return out;
  }
  std::vector<Action> uncertain;
  std::vector<Action> certain;
  for (const Action& a : actions) {
    (a.prob == 1.0 ? certain : uncertain).push_back(a);
  }
  const auto key = [](const Action& a) { return Ratio{a.cost, 1.0 - a.prob}; };
  std::stable_sort(uncertain.begin(), uncertain.end(),
                   [&](const Action& a, const Action& b) {
                     return ranked_before(a, b, key);
                   });
  // t/(1-p) is infinite for every certain action, so only cost and id rank.
  std::stable_sort(certain.begin(), certain.end(),
                   [](const Action& a, const Action& b) {
                     if (a.cost != b.cost) return a.cost < b.cost;
                     return a.id < b.id;
                   });
  out.order = std::move(uncertain);
  out.order.insert(out.order.end(), certain.begin(), certain.end());
  out.metrics = and_metrics(out.order);
  return out;
}

Action as_action(const PlanMetrics& metrics, std::string id,
                 std::string name) {
  Action a;
  a.id = std::move(id);
  a.name = name.empty() ? a.id : std::move(name);
  a.prob = metrics.prob;
  a.cost = metrics.time;
  return a;
}

StrategyPlan order_strategies(std::span<const StrategyGroup> groups) {
  std::vector<GroupPlan> reduced;
  reduced.reserve(groups.size());
  for (const StrategyGroup& g : groups) {
    if (g.actions.empty()) {
      throw std::invalid_argument("strategy group '" + g.id + "' is empty");
    }
    validate_all(g.actions);
    GroupPlan plan{g.id, {}, {}};
    if (g.ordered) {
      plan.order = g.actions;
      plan.metrics = and_metrics(plan.order);
    } else {
      Ordering o = and_order(g.actions);
      plan.order = std::move(o.order);
      plan.metrics = o.metrics;
    }
    if (plan.metrics.prob > 0.0) reduced.push_back(std::move(plan));
  }

  // Rank groups as pseudo-actions so the OR tie-break rules apply unchanged.
  std::vector<Action> pseudo;
  pseudo.reserve(reduced.size());
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    pseudo.push_back(as_action(reduced[i].metrics, reduced[i].id,
                               std::to_string(i)));
  }
  const Ordering ranked = choose_order(pseudo);

  StrategyPlan out;
  out.overall = ranked.metrics;
  for (const Action& a : ranked.order) {
    out.groups.push_back(std::move(reduced[std::stoul(a.name)]));
  }
  return out;
}

Ordering brute_force_best_order(std::span<const Action> actions,
                                GroupMode mode) {
  if (actions.size() > kMaxBruteForceActions) {
    throw std::invalid_argument("brute force ordering supports at most 9 actions");
  }
  validate_all(actions);
  std::vector<std::size_t> perm(actions.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  Ordering best;
  bool have_best = false;
  std::vector<Action> candidate(actions.size());
  do {
    for (std::size_t i = 0; i < perm.size(); ++i) candidate[i] = actions[perm[i]];
    const PlanMetrics m = mode == GroupMode::kOr ? or_metrics(candidate)
                                                 : and_metrics(candidate);
    if (!have_best || m.time < best.metrics.time) {
      best.order = candidate;
      best.metrics = m;
      have_best = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace probplan
