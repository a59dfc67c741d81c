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

#ifndef PROBPLAN_REPORT_HPP_
#define PROBPLAN_REPORT_HPP_

#include <string>

#include <json.hpp>

#include "probplan/asset_graph.hpp"
#include "probplan/attack_tree.hpp"
#include "probplan/model.hpp"
#include "probplan/simulator.hpp"

namespace probplan {

using Json = nlohmann::ordered_json;

// Shortest text that reads back to the same double.
std::string format_number(double value);

Json action_json(const Action& action);
Json tree_json(const AttackTree& tree, const TreeSolution& solution);
Json graph_json(const AssetGraph& graph);
Json stats_json(const SimStats& stats);
Json episode_json(const Episode& episode);

}  // namespace probplan

#endif  // PROBPLAN_REPORT_HPP_
