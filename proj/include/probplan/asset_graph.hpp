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

#ifndef PROBPLAN_ASSET_GRAPH_HPP_
#define PROBPLAN_ASSET_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "probplan/model.hpp"
#include "probplan/scenario.hpp"

namespace probplan {

// Compound (T, P) of compromising one host directly from another.
struct EdgeLabel {
  double time = 0.0;
  double prob = 0.0;

  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
};

struct Edge {
  std::size_t to = 0;
  EdgeLabel label;
};

// Directed graph of distinguished assets (one agent asset per host). An
// absent edge means probability 0 and time +inf; such labels are never
// stored.
class AssetGraph {
 public:
  AssetGraph() = default;
  explicit AssetGraph(std::vector<std::string> nodes);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<std::string>& nodes() const { return nodes_; }
  std::optional<std::size_t> find(std::string_view name) const;

  // Inserts or replaces edge i -> j. A label with prob 0 removes the edge.
  // Throws std::invalid_argument for self loops or invalid labels.
  void set_edge(std::size_t from, std::size_t to, EdgeLabel label);
  void remove_edge(std::size_t from, std::size_t to);
  std::optional<EdgeLabel> edge(std::size_t from, std::size_t to) const;

  // Sorted by destination.
  std::span<const Edge> out_edges(std::size_t from) const { return out_[from]; }
  std::size_t edge_count() const;

 private:
  std::vector<std::string> nodes_;
  std::vector<std::vector<Edge>> out_;
};

// Fills `out` with the labelled out-edges of `from`, sorted by destination.
using EdgeSource = std::function<void(std::size_t from, std::vector<Edge>& out)>;

// Solves the first-level tree for every reachable ordered host pair and
// keeps the feasible ones as edges. Up to `jobs` worker threads; the result
// does not depend on the job count.
AssetGraph build_asset_graph(const Network& network, unsigned jobs = 1);
AssetGraph build_asset_graph(const Scenario& scenario, unsigned jobs = 1);

// Out-edges of one host computed on demand from tree solves, so the M^2
// edge labels never need to be stored at once.
void scenario_out_edges(const Network& network, std::size_t from,
                        std::vector<Edge>& out, unsigned jobs = 1);

inline constexpr std::size_t kNoPredecessor = static_cast<std::size_t>(-1);

struct AllPairsResult {
  std::size_t size = 0;
  std::vector<double> time;  // row-major M x M
  std::vector<double> prob;
  std::vector<std::size_t> pred;  // pred[i*M+j]: node before j on i -> j
  std::uint64_t inner_iterations = 0;
  std::uint64_t refolded_entries = 0;  // relaxed labels replaced by the path fold

  PlanMetrics at(std::size_t i, std::size_t j) const {
    return {time[i * size + j], prob[i * size + j]};
  }
};

struct SingleSourceResult {
  std::vector<std::size_t> sources;
  std::vector<double> time;
  std::vector<double> prob;
  std::vector<std::size_t> pred;
  std::uint64_t relaxations = 0;     // edges examined
  std::uint64_t selection_scans = 0;  // queue entries inspected by argmin

  PlanMetrics at(std::size_t v) const { return {time[v], prob[v]}; }
};

// Floyd-Warshall with (T, P) path labels: relaxes i -> j through pivot k
// when (T[i,k] + P[i,k] T[k,j]) / (P[i,k] P[k,j]) beats T[i,j] / P[i,j].
// Every entry is finally reported as the left fold of the edge labels along
// its reconstructed path.
AllPairsResult modified_floyd_warshall(const AssetGraph& graph);

// Dijkstra with (T, P) labels keyed by T/P. Settles one node per round by a
// linear argmin over the queue, O(M^2) total.
SingleSourceResult modified_dijkstra(const AssetGraph& graph, std::size_t source);

// Same, from several already-compromised sources (each starts at (0, 1)),
// pulling edges from `edges` as nodes are settled.
SingleSourceResult modified_dijkstra(std::size_t node_count,
                                     std::span<const std::size_t> sources,
                                     const EdgeSource& edges);

// Node sequence from a source to `goal`, or nullopt when P = 0.
std::optional<std::vector<std::size_t>> reconstruct_path(
    const AllPairsResult& result, std::size_t source, std::size_t goal);
std::optional<std::vector<std::size_t>> reconstruct_path(
    const SingleSourceResult& result, std::size_t goal);

// Left fold of the edge labels along `path`, starting from (0, 1).
// Throws std::invalid_argument if an edge is missing.
PlanMetrics fold_path(const AssetGraph& graph, std::span<const std::size_t> path);

struct PathChoice {
  std::vector<std::size_t> path;
  PlanMetrics metrics;
};

inline constexpr std::size_t kMaxOracleNodes = 8;

// Exhaustive search over simple paths for the minimum T/P. Depth-first in
// ascending neighbour order; the first minimum found wins. Throws
// std::invalid_argument when the graph has more than 8 nodes.
std::optional<PathChoice> enumerate_paths_oracle(const AssetGraph& graph,
                                                 std::size_t source,
                                                 std::size_t goal);

}  // namespace probplan

#endif  // PROBPLAN_ASSET_GRAPH_HPP_
