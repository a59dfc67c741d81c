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

#include "probplan/attack_tree.hpp"

#include <stdexcept>

#include "probplan/primitives.hpp"

namespace probplan {
namespace {

Action probe_action(std::string id, std::string name, const ProbeStats& s) {
  return Action{std::move(id), std::move(name), s.prob, s.cost};
}

class Solver {
 public:
  explicit Solver(const AttackTree& tree) : tree_(tree) {
    out_.node_metrics.assign(tree.size(), PlanMetrics{});
    out_.ordering.assign(tree.size(), {});
  }

  TreeSolution run() {
    out_.metrics = reduce(AttackTree::kRoot);
    emit_plan(AttackTree::kRoot);
    return std::move(out_);
  }

 private:
  // Children enter the primitives as pseudo-actions; the name carries the
  // node id back out.
  Action pseudo(NodeId id, const PlanMetrics& m) const {
    const TreeNode& n = tree_.node(id);
    std::string key = n.is_asset() ? n.asset().key() : n.action().action.id;
    return as_action(m, std::move(key), std::to_string(id));
  }

  std::vector<NodeId> ids_of(const std::vector<Action>& order) const {
    std::vector<NodeId> ids;
    ids.reserve(order.size());
    for (const Action& a : order) ids.push_back(std::stoul(a.name));
    return ids;
  }

  PlanMetrics reduce(NodeId id) {
    const TreeNode& n = tree_.node(id);
    PlanMetrics m;
    if (n.is_asset()) {
      const AssetNode& asset = n.asset();
      if (asset.satisfied) {
        m = {0.0, 1.0};
      } else {
        std::vector<Action> children;
        children.reserve(asset.providers.size());
        for (NodeId c : asset.providers) children.push_back(pseudo(c, reduce(c)));
        Ordering o = choose_order(children);
        out_.ordering[id] = ids_of(o.order);
        m = o.metrics;
      }
    } else {
      const ActionNode& node = n.action();
      std::vector<Action> reqs;
      reqs.reserve(node.requirements.size());
      for (NodeId c : node.requirements) reqs.push_back(pseudo(c, reduce(c)));
      Ordering o = and_order(reqs);
      out_.ordering[id] = ids_of(o.order);
      m.time = o.metrics.time + o.metrics.prob * node.action.cost;
      m.prob = o.metrics.prob * node.action.prob;
    }
    out_.node_metrics[id] = m;
    return m;
  }

  void emit_plan(NodeId id) {
    const TreeNode& n = tree_.node(id);
    if (n.is_asset()) {
      if (n.asset().satisfied || out_.ordering[id].empty()) return;
      emit_plan(out_.ordering[id].front());
      return;
    }
    if (out_.node_metrics[id].prob == 0.0) return;
    for (NodeId req : out_.ordering[id]) emit_plan(req);
    out_.plan.push_back(id);
  }

  const AttackTree& tree_;
  TreeSolution out_;
};

}  // namespace

std::string_view asset_kind_name(AssetKind kind) {
  switch (kind) {
    case AssetKind::kAgent:
      return "agent";
    case AssetKind::kConnectivity:
      return "connectivity";
    case AssetKind::kPortOpen:
      return "port_open";
    case AssetKind::kOsFact:
      return "os_fact";
  }
  return "agent";
}

std::string_view action_kind_name(ActionKind kind) {
  switch (kind) {
    case ActionKind::kExploit:
      return "exploit";
    case ActionKind::kHostProbe:
      return "host_probe";
    case ActionKind::kPortProbe:
      return "port_probe";
    case ActionKind::kOsDetect:
      return "os_detect";
  }
  return "exploit";
}

std::string AssetNode::key() const {
  std::string k(asset_kind_name(kind));
  k += '(';
  if (kind == AssetKind::kConnectivity) k += from + "->";
  k += host;
  if (kind == AssetKind::kPortOpen) k += ':' + std::to_string(port);
  k += ')';
  return k;
}

AttackTree::AttackTree(std::string source, std::string target)
    : source_(std::move(source)), target_(std::move(target)) {}

NodeId AttackTree::add_asset(AssetNode asset, std::optional<NodeId> parent) {
  const NodeId id = nodes_.size();
  if (parent) {
    if (nodes_.at(*parent).is_asset()) {
      throw std::logic_error("asset nodes must hang below action nodes");
    }
    nodes_[*parent].action().requirements.push_back(id);
  } else if (!nodes_.empty()) {
    throw std::logic_error("tree already has a root");
  }
  nodes_.push_back(TreeNode{std::move(asset), parent, false});
  return id;
}

NodeId AttackTree::add_action(ActionNode action, NodeId parent) {
  const NodeId id = nodes_.size();
  if (!nodes_.at(parent).is_asset()) {
    throw std::logic_error("action nodes must hang below asset nodes");
  }
  nodes_[parent].asset().providers.push_back(id);
  nodes_.push_back(TreeNode{std::move(action), parent, false});
  return id;
}

std::optional<NodeId> AttackTree::find_action(std::string_view action_id) const {
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    const TreeNode& n = nodes_[id];
    if (n.detached || n.is_asset()) continue;
    if (n.action().action.id == action_id) return id;
  }
  return std::nullopt;
}

void AttackTree::satisfy(const std::string& asset_key) {
  for (TreeNode& n : nodes_) {
    if (n.detached || !n.is_asset()) continue;
    if (n.asset().key() == asset_key) n.asset().satisfied = true;
  }
}

void AttackTree::detach(NodeId action_node) {
  TreeNode& n = nodes_.at(action_node);
  if (n.is_asset() || !n.parent) {
    throw std::invalid_argument("only action nodes can be detached");
  }
  auto& siblings = nodes_[*n.parent].asset().providers;
  std::erase(siblings, action_node);
  // Detach the whole subtree so lookups skip it.
  std::vector<NodeId> stack{action_node};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    TreeNode& d = nodes_[id];
    d.detached = true;
    const auto& kids = d.is_asset() ? d.asset().providers : d.action().requirements;
    stack.insert(stack.end(), kids.begin(), kids.end());
  }
}

bool AttackTree::well_formed() const {
  if (nodes_.empty()) return false;
  if (!nodes_[kRoot].is_asset() || nodes_[kRoot].parent) return false;
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<NodeId> stack{kRoot};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    if (seen[id]) return false;  // shared child or cycle
    seen[id] = 1;
    const TreeNode& n = nodes_[id];
    if (n.detached) return false;
    const auto& kids = n.is_asset() ? n.asset().providers : n.action().requirements;
    for (NodeId c : kids) {
      if (c >= nodes_.size()) return false;
      const TreeNode& k = nodes_[c];
      if (k.is_asset() == n.is_asset()) return false;
      if (k.parent != id) return false;
      stack.push_back(c);
    }
  }
  return true;
}

AttackTree build_tree(const Network& net, std::size_t source,
                      std::size_t target) {
  if (source >= net.size() || target >= net.size()) {
    throw std::invalid_argument("host index out of range");
  }
  if (source == target) {
    throw std::invalid_argument("source and target must differ");
  }
  const Scenario& s = net.scenario();
  const Host& src = net.host(source);
  const Host& dst = net.host(target);

  AttackTree tree(src.id, dst.id);
  const NodeId root =
      tree.add_asset(AssetNode{AssetKind::kAgent, dst.id, "", 0, false, {}},
                     std::nullopt);
  const bool reachable = net.reachable(source, target);

  for (const ApplicableExploit& ae : net.applicable(target)) {
    const ExploitTemplate& e = s.exploits[ae.exploit];
    const ExploitTarget& stats = e.targets[ae.target];
    const std::string exploit_id = "exploit:" + e.name + "@" + dst.id;
    const NodeId exploit = tree.add_action(
        ActionNode{ActionKind::kExploit,
                   Action{exploit_id, e.name, stats.prob, stats.cost},
                   {}},
        root);

    const NodeId conn = tree.add_asset(
        AssetNode{AssetKind::kConnectivity, dst.id, src.id, 0,
                  net.knows_connectivity(source, target), {}},
        exploit);
    if (!tree.node(conn).asset().satisfied && reachable) {
      tree.add_action(
          ActionNode{ActionKind::kHostProbe,
                     probe_action(exploit_id + "/host_probe",
                                  "host probe " + dst.id, s.probes.host_probe),
                     {}},
          conn);
    }

    const NodeId port = tree.add_asset(
        AssetNode{AssetKind::kPortOpen, dst.id, "", e.port,
                  net.knows_port(target, e.port), {}},
        exploit);
    if (!tree.node(port).asset().satisfied && net.port_open(target, e.port)) {
      const std::string port_text = std::to_string(e.port);
      const std::string proto = e.protocol == Protocol::kTcp ? "TCP" : "UDP";
      tree.add_action(
          ActionNode{ActionKind::kPortProbe,
                     probe_action(exploit_id + "/port_probe:" + port_text,
                                  proto + " port probe " + dst.id + ":" + port_text,
                                  s.probes.port_probe),
                     {}},
          port);
    }

    const NodeId os = tree.add_asset(
        AssetNode{AssetKind::kOsFact, dst.id, "", 0, net.knows_os(target), {}},
        exploit);
    if (!tree.node(os).asset().satisfied) {
      tree.add_action(
          ActionNode{ActionKind::kOsDetect,
                     probe_action(exploit_id + "/os_detect",
                                  "OS detection " + dst.id, s.probes.os_detect),
                     {}},
          os);
    }
  }
  return tree;
}

AttackTree build_tree(const Scenario& scenario, std::string_view source,
                      std::string_view target) {
  const Network net(scenario);
  return build_tree(net, net.host_index(source), net.host_index(target));
}

TreeSolution solve_tree(const AttackTree& tree) {
  if (tree.size() == 0) throw std::invalid_argument("empty attack tree");
  return Solver(tree).run();
}

std::pair<AttackTree, TreeSolution> replan(AttackTree tree,
                                           const Observation& observation) {
  const auto id = tree.find_action(observation.action_id);
  if (!id) {
    throw std::invalid_argument("unknown action '" + observation.action_id + "'");
  }
  if (observation.success) {
    const NodeId produced = *tree.node(*id).parent;
    tree.satisfy(tree.node(produced).asset().key());
  } else {
    tree.detach(*id);
  }
  TreeSolution solution = solve_tree(tree);
  return {std::move(tree), std::move(solution)};
}

}  // namespace probplan
