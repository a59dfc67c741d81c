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

#ifndef PROBPLAN_ATTACK_TREE_HPP_
#define PROBPLAN_ATTACK_TREE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "probplan/model.hpp"
#include "probplan/scenario.hpp"

namespace probplan {

using NodeId = std::size_t;

enum class AssetKind { kAgent, kConnectivity, kPortOpen, kOsFact };
enum class ActionKind { kExploit, kHostProbe, kPortProbe, kOsDetect };

std::string_view asset_kind_name(AssetKind kind);
std::string_view action_kind_name(ActionKind kind);

// OR node: satisfied by any one of its providers.
struct AssetNode {
  AssetKind kind = AssetKind::kAgent;
  std::string host;
  std::string from;  // kConnectivity: the probing host
  int port = 0;      // kPortOpen
  bool satisfied = false;
  std::vector<NodeId> providers;

  // Identifies the fact itself; duplicated requirements share a key.
  std::string key() const;
};

// AND node: all requirements, then the action itself.
struct ActionNode {
  ActionKind kind = ActionKind::kExploit;
  Action action;
  std::vector<NodeId> requirements;
};

struct TreeNode {
  std::variant<AssetNode, ActionNode> body;
  std::optional<NodeId> parent;
  bool detached = false;  // pruned by a failure observation

  bool is_asset() const { return std::holds_alternative<AssetNode>(body); }
  const AssetNode& asset() const { return std::get<AssetNode>(body); }
  AssetNode& asset() { return std::get<AssetNode>(body); }
  const ActionNode& action() const { return std::get<ActionNode>(body); }
  ActionNode& action() { return std::get<ActionNode>(body); }
};

// Alternating AND-OR tree rooted at the goal "agent on target" asset. Nodes
// live in an arena; the root is node 0.
class AttackTree {
 public:
  AttackTree() = default;
  AttackTree(std::string source, std::string target);

  static constexpr NodeId kRoot = 0;

  const std::string& source() const { return source_; }
  const std::string& target() const { return target_; }
  std::size_t size() const { return nodes_.size(); }
  const TreeNode& node(NodeId id) const { return nodes_.at(id); }
  TreeNode& node(NodeId id) { return nodes_.at(id); }

  NodeId add_asset(AssetNode asset, std::optional<NodeId> parent);
  NodeId add_action(ActionNode action, NodeId parent);

  // Attached action node carrying this action id, if any.
  std::optional<NodeId> find_action(std::string_view action_id) const;

  // Marks every attached asset with this key satisfied.
  void satisfy(const std::string& asset_key);

  // Removes an action node from its parent's provider list.
  void detach(NodeId action_node);

  // Asset children are actions, action children are assets, parents agree,
  // and the root is an asset with no parent.
  bool well_formed() const;

 private:
  std::string source_;
  std::string target_;
  std::vector<TreeNode> nodes_;
};

// Builds the first-level tree for compromising `target` from an agent on
// `source`. Only exploits and the probes that establish their requirements
// appear; requirements recorded as known facts become satisfied leaves.
AttackTree build_tree(const Network& network, std::size_t source,
                      std::size_t target);
AttackTree build_tree(const Scenario& scenario, std::string_view source,
                      std::string_view target);

struct TreeSolution {
  PlanMetrics metrics;                        // root (T, P)
  std::vector<NodeId> plan;                   // first-choice actions in order
  std::vector<PlanMetrics> node_metrics;      // indexed by NodeId
  std::vector<std::vector<NodeId>> ordering;  // ranked children per node
};

// Bottom-up reduction. Asset nodes fold their providers with the choose
// primitive; action nodes order their requirements with the combine
// primitive and run the action last.
TreeSolution solve_tree(const AttackTree& tree);

struct Observation {
  std::string action_id;
  bool success = false;
};

// Applies an observed outcome and re-solves. Success satisfies the asset the
// action provides (everywhere it appears); failure removes the action node.
// Throws std::invalid_argument for an unknown or detached action id.
std::pair<AttackTree, TreeSolution> replan(AttackTree tree,
                                           const Observation& observation);

}  // namespace probplan

#endif  // PROBPLAN_ATTACK_TREE_HPP_
