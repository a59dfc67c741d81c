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

#ifndef PROBPLAN_SIMULATOR_HPP_
#define PROBPLAN_SIMULATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "probplan/asset_graph.hpp"
#include "probplan/attack_tree.hpp"
#include "probplan/model.hpp"
#include "probplan/scenario.hpp"

namespace probplan {

// A static contingency plan. kAnyOf runs children in order until one
// succeeds, kAllOf until one fails. An empty kAnyOf fails and an empty
// kAllOf succeeds, both at no cost.
struct PlanNode {
  enum class Kind { kStep, kAnyOf, kAllOf };

  Kind kind = Kind::kAllOf;
  Action action;  // kStep only
  std::vector<PlanNode> children;

  static PlanNode step(Action action);
  static PlanNode any_of(std::vector<PlanNode> children);
  static PlanNode all_of(std::vector<PlanNode> children);
};

PlanNode or_plan(std::span<const Action> ordered);
PlanNode and_plan(std::span<const Action> ordered);

// The contingency plan a solved tree encodes: every OR node tries its
// providers in ranked order, every action node runs its requirements in
// ranked order and then itself.
PlanNode tree_policy(const AttackTree& tree, const TreeSolution& solution);

// Hop-by-hop plan along a host path; each hop runs its own tree policy and
// the attack stops at the first failed hop.
PlanNode path_policy(const Network& network, std::span<const std::size_t> path);

// Analytic (T, P) of a plan, folding children with or_metrics/and_metrics in
// the order given.
PlanMetrics expected_metrics(const PlanNode& plan);

// Seed for trial `index` of a run seeded with `seed` (SplitMix64 over the
// pair), so trials are independent streams regardless of scheduling.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

struct TrialOutcome {
  bool success = false;
  double elapsed = 0.0;
  std::size_t actions_run = 0;
  std::vector<std::pair<std::string, bool>> transcript;  // (action id, success)
};

// One execution. Each executed action succeeds iff a fresh uniform draw from
// the seeded stream falls below its probability; its cost is charged either
// way.
TrialOutcome simulate_plan(const PlanNode& plan, std::uint64_t seed);

struct SimStats {
  std::size_t trials = 0;
  double mean_time = 0.0;
  double sample_std = 0.0;
  double success_rate = 0.0;
  double standard_error = 0.0;  // sample_std / sqrt(trials)

  friend bool operator==(const SimStats&, const SimStats&) = default;
};

// `trials` independent executions; trial i uses trial_seed(seed, i). The
// result is identical for every job count. Throws for trials == 0.
SimStats run_trials(const PlanNode& plan, std::size_t trials, std::uint64_t seed,
                    unsigned jobs = 1);

// Aggregates per-trial samples (compensated summation in index order).
SimStats summarize(std::span<const double> elapsed, std::span<const char> success);

struct EpisodeStep {
  std::vector<std::string> path;  // planned host path at decision time
  PlanMetrics path_metrics;       // its (T, P)
  std::string from;
  std::string to;
  std::string action_id;
  std::string action_name;
  double cost = 0.0;
  bool success = false;
};

struct Episode {
  bool success = false;  // goal compromised
  double elapsed = 0.0;
  std::vector<EpisodeStep> steps;
};

// Execute-observe-replan loop: plan a path to the goal from every host
// compromised so far, run the first action of the first hop's tree plan,
// feed the outcome back into that tree and the graph edge it labels, and
// repeat until the goal falls or no feasible path remains.
Episode replanning_run(const Network& network, const AssetGraph& graph,
                       std::size_t source, std::size_t goal, std::uint64_t seed);
Episode replanning_run(const Scenario& scenario, std::string_view source,
                       std::string_view goal, std::uint64_t seed);

}  // namespace probplan

#endif  // PROBPLAN_SIMULATOR_HPP_
