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

#include "probplan/report.hpp"

#include <charconv>
#include <cmath>

namespace probplan {

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

Json action_json(const Action& action) {
  Json j;
  j["id"] = action.id;
  j["name"] = action.name;
  j["prob"] = action.prob;
  j["cost"] = action.cost;
  return j;
}

Json tree_json(const AttackTree& tree, const TreeSolution& solution) {
  Json j;
  j["source"] = tree.source();
  j["target"] = tree.target();
  j["T"] = solution.metrics.time;
  j["P"] = solution.metrics.prob;
  Json plan = Json::array();
  for (NodeId id : solution.plan) plan.push_back(tree.node(id).action().action.id);
  j["plan"] = std::move(plan);

  Json nodes = Json::array();
  for (NodeId id = 0; id < tree.size(); ++id) {
    const TreeNode& n = tree.node(id);
    Json e;
    e["id"] = id;
    if (n.parent) {
      e["parent"] = *n.parent;
    } else {
      e["parent"] = nullptr;
    }
    if (n.is_asset()) {
      const AssetNode& a = n.asset();
      e["type"] = "asset";
      e["kind"] = std::string(asset_kind_name(a.kind));
      e["key"] = a.key();
      e["satisfied"] = a.satisfied;
      e["children"] = a.providers;
    } else {
      const ActionNode& a = n.action();
      e["type"] = "action";
      e["kind"] = std::string(action_kind_name(a.kind));
      e["action"] = action_json(a.action);
      e["children"] = a.requirements;
    }
    e["detached"] = n.detached;
    if (id < solution.node_metrics.size()) {
      e["T"] = solution.node_metrics[id].time;
      e["P"] = solution.node_metrics[id].prob;
      e["ranked"] = solution.ordering[id];
    }
    nodes.push_back(std::move(e));
  }
  j["nodes"] = std::move(nodes);
  return j;
}

Json graph_json(const AssetGraph& graph) {
  Json j;
  j["nodes"] = graph.nodes();
  Json edges = Json::array();
  for (std::size_t u = 0; u < graph.size(); ++u) {
    for (const Edge& e : graph.out_edges(u)) {
      Json x;
      x["from"] = graph.nodes()[u];
      x["to"] = graph.nodes()[e.to];
      x["T"] = e.label.time;
      x["P"] = e.label.prob;
      edges.push_back(std::move(x));
    }
  }
  j["edges"] = std::move(edges);
  return j;
}

Json stats_json(const SimStats& stats) {
  Json j;
  j["trials"] = stats.trials;
  j["mean_time"] = stats.mean_time;
  j["sample_std"] = stats.sample_std;
  j["success_rate"] = stats.success_rate;
  j["standard_error"] = stats.standard_error;
  return j;
}

Json episode_json(const Episode& episode) {
  Json j;
  j["success"] = episode.success;
  j["elapsed"] = episode.elapsed;
  Json steps = Json::array();
  for (const EpisodeStep& s : episode.steps) {
    Json x;
    x["path"] = s.path;
    x["path_T"] = s.path_metrics.time;
    x["path_P"] = s.path_metrics.prob;
    x["from"] = s.from;
    x["to"] = s.to;
    x["action"] = s.action_id;
    x["name"] = s.action_name;
    x["cost"] = s.cost;
    x["success"] = s.success;
    steps.push_back(std::move(x));
  }
  j["steps"] = std::move(steps);
  return j;
}

}  // namespace probplan
