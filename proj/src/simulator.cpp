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

#include "probplan/simulator.hpp"

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "parallel.hpp"
#include "probplan/primitives.hpp"

namespace probplan {
namespace {

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct Runner {
  Stream stream;
  TrialOutcome* out;
  bool record;

  bool run(const PlanNode& node) {
    switch (node.kind) {
      case PlanNode::Kind::kStep: {
        const bool ok = stream.unit() < node.action.prob;
        out->elapsed += node.action.cost;
        ++out->actions_run;
        if (record) out->transcript.emplace_back(node.action.id, ok);
        return ok;
      }
      case PlanNode::Kind::kAnyOf:
        for (const PlanNode& c : node.children) {
          if (run(c)) return true;
        }
        return false;
      case PlanNode::Kind::kAllOf:
        for (const PlanNode& c : node.children) {
          if (!run(c)) return false;
        }
        return true;
    }
    return false;
  }
};

TrialOutcome run_one(const PlanNode& plan, std::uint64_t seed, bool record) {
  TrialOutcome out;
  Runner runner{Stream(seed), &out, record};
  out.success = runner.run(plan);
  return out;
}

PlanNode tree_node_policy(const AttackTree& tree, const TreeSolution& sol,
                          NodeId id) {
  const TreeNode& n = tree.node(id);
  std::vector<PlanNode> children;
  if (n.is_asset()) {
    if (n.asset().satisfied) return PlanNode::all_of({});
    for (NodeId c : sol.ordering[id]) children.push_back(tree_node_policy(tree, sol, c));
    return PlanNode::any_of(std::move(children));
  }
  for (NodeId c : sol.ordering[id]) children.push_back(tree_node_policy(tree, sol, c));
  children.push_back(PlanNode::step(n.action().action));
  return PlanNode::all_of(std::move(children));
}

// Neumaier summation.
double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

}  // namespace

PlanNode PlanNode::step(Action action) {
  PlanNode n;
  n.kind = Kind::kStep;
  n.action = std::move(action);
  return n;
}

PlanNode PlanNode::any_of(std::vector<PlanNode> children) {
  PlanNode n;
  n.kind = Kind::kAnyOf;
  n.children = std::move(children);
  return n;
}

PlanNode PlanNode::all_of(std::vector<PlanNode> children) {
  PlanNode n;
  n.kind = Kind::kAllOf;
  n.children = std::move(children);
  return n;
}

PlanNode or_plan(std::span<const Action> ordered) {
  std::vector<PlanNode> steps;
  for (const Action& a : ordered) steps.push_back(PlanNode::step(a));
  return PlanNode::any_of(std::move(steps));
}

PlanNode and_plan(std::span<const Action> ordered) {
  std::vector<PlanNode> steps;
  for (const Action& a : ordered) steps.push_back(PlanNode::step(a));
  return PlanNode::all_of(std::move(steps));
}

PlanNode tree_policy(const AttackTree& tree, const TreeSolution& solution) {
  return tree_node_policy(tree, solution, AttackTree::kRoot);
}

PlanNode path_policy(const Network& network, std::span<const std::size_t> path) {
  std::vector<PlanNode> hops;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const AttackTree tree = build_tree(network, path[i - 1], path[i]);
    hops.push_back(tree_policy(tree, solve_tree(tree)));
  }
  return PlanNode::all_of(std::move(hops));
}

PlanMetrics expected_metrics(const PlanNode& plan) {
  if (plan.kind == PlanNode::Kind::kStep) {
    return {plan.action.cost, plan.action.prob};
  }
  std::vector<Action> reduced;
  reduced.reserve(plan.children.size());
  for (const PlanNode& c : plan.children) {
    reduced.push_back(as_action(expected_metrics(c), "child", "child"));
  }
  return plan.kind == PlanNode::Kind::kAnyOf ? or_metrics(reduced)
                                             : and_metrics(reduced);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  const auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) ^ index);
}

TrialOutcome simulate_plan(const PlanNode& plan, std::uint64_t seed) {
  return run_one(plan, seed, true);
}

SimStats summarize(std::span<const double> elapsed, std::span<const char> success) {
  if (elapsed.empty() || elapsed.size() != success.size()) {
    throw std::invalid_argument("need one success flag per trial and at least one trial");
  }
  const double n = static_cast<double>(elapsed.size());
  SimStats s;
  s.trials = elapsed.size();
  s.mean_time = compensated_sum(elapsed) / n;
  std::vector<double> sq(elapsed.size());
  for (std::size_t i = 0; i < elapsed.size(); ++i) {
    const double d = elapsed[i] - s.mean_time;
    sq[i] = d * d;
  }
  s.sample_std = elapsed.size() > 1 ? std::sqrt(compensated_sum(sq) / (n - 1.0)) : 0.0;
  std::size_t wins = 0;
  for (char c : success) wins += c ? 1 : 0;
  s.success_rate = static_cast<double>(wins) / n;
  s.standard_error = s.sample_std / std::sqrt(n);
  return s;
}

SimStats run_trials(const PlanNode& plan, std::size_t trials, std::uint64_t seed,
                    unsigned jobs) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  std::vector<double> elapsed(trials);
  std::vector<char> success(trials);
  detail::parallel_for(trials, jobs, [&](std::size_t i) {
    const TrialOutcome t = run_one(plan, trial_seed(seed, i), false);
    elapsed[i] = t.elapsed;
    success[i] = t.success ? 1 : 0;
  });
  return summarize(elapsed, success);
}

Episode replanning_run(const Network& network, const AssetGraph& initial,
                       std::size_t source, std::size_t goal, std::uint64_t seed) {
  const std::size_t m = network.size();
  if (source >= m || goal >= m) throw std::invalid_argument("host index out of range");

  AssetGraph graph = initial;
  std::vector<std::size_t> compromised{source};
  std::vector<char> owned(m, 0);
  owned[source] = 1;
  std::map<std::pair<std::size_t, std::size_t>, AttackTree> trees;
  Stream stream(trial_seed(seed, 0));
  Episode episode;

  while (!owned[goal]) {
    const SingleSourceResult reach = modified_dijkstra(
        m, compromised, [&graph](std::size_t u, std::vector<Edge>& out) {
          const auto e = graph.out_edges(u);
          out.assign(e.begin(), e.end());
        });
    const auto path = reconstruct_path(reach, goal);
    if (!path) return episode;  // infeasible

    const std::size_t from = (*path)[0];
    const std::size_t to = (*path)[1];
    auto it = trees.find({from, to});
    if (it == trees.end()) {
      it = trees.emplace(std::make_pair(from, to), build_tree(network, from, to)).first;
    }
    const TreeSolution current = solve_tree(it->second);
    if (current.plan.empty()) {
      graph.remove_edge(from, to);
      continue;
    }

    const Action& action = it->second.node(current.plan.front()).action().action;
    EpisodeStep step;
    for (std::size_t v : *path) step.path.push_back(network.host(v).id);
    step.path_metrics = reach.at(goal);
    step.from = network.host(from).id;
    step.to = network.host(to).id;
    step.action_id = action.id;
    step.action_name = action.name;
    step.cost = action.cost;
    step.success = stream.unit() < action.prob;
    episode.elapsed += action.cost;

    auto [tree, solution] = replan(std::move(it->second), {action.id, step.success});
    it->second = std::move(tree);
    episode.steps.push_back(std::move(step));

    if (it->second.node(AttackTree::kRoot).asset().satisfied) {
      owned[to] = 1;
      compromised.push_back(to);
      trees.erase(it);
    } else {
      graph.set_edge(from, to, EdgeLabel{solution.metrics.time, solution.metrics.prob});
    }
  }
  episode.success = true;
  return episode;
}

Episode replanning_run(const Scenario& scenario, std::string_view source,
                       std::string_view goal, std::uint64_t seed) {
  const Network network(scenario);
  const AssetGraph graph = build_asset_graph(network);
  return replanning_run(network, graph, network.host_index(source),
                        network.host_index(goal), seed);
}

}  // namespace probplan
