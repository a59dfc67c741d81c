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

#include "probplan/asset_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "parallel.hpp"
#include "probplan/attack_tree.hpp"

namespace probplan {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool improves(double t_new, double p_new, double t_old, double p_old) {
  return ratio_cmp(Ratio{t_new, p_new}, Ratio{t_old, p_old}) < 0;
}

}  // namespace

AssetGraph::AssetGraph(std::vector<std::string> nodes)
    : nodes_(std::move(nodes)), out_(nodes_.size()) {}

std::optional<std::size_t> AssetGraph::find(std::string_view name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i] == name) return i;
  }
  return std::nullopt;
}

void AssetGraph::set_edge(std::size_t from, std::size_t to, EdgeLabel label) {
  if (from >= size() || to >= size()) {
    throw std::invalid_argument("edge endpoint out of range");
  }
  if (from == to) throw std::invalid_argument("self loops are not allowed");
  if (!(label.prob >= 0.0 && label.prob <= 1.0)) {
    throw std::invalid_argument("edge probability outside [0, 1]");
  }
  if (label.prob == 0.0) {
    remove_edge(from, to);
    return;
  }
  if (!std::isfinite(label.time) || label.time < 0.0) {
    throw std::invalid_argument("edge time must be finite and >= 0");
  }
  auto& edges = out_[from];
  auto it = std::lower_bound(edges.begin(), edges.end(), to,
                             [](const Edge& e, std::size_t v) { return e.to < v; });
  if (it != edges.end() && it->to == to) {
    it->label = label;
  } else {
    edges.insert(it, Edge{to, label});
  }
}

void AssetGraph::remove_edge(std::size_t from, std::size_t to) {
  auto& edges = out_.at(from);
  auto it = std::lower_bound(edges.begin(), edges.end(), to,
                             [](const Edge& e, std::size_t v) { return e.to < v; });
  if (it != edges.end() && it->to == to) edges.erase(it);
}

std::optional<EdgeLabel> AssetGraph::edge(std::size_t from, std::size_t to) const {
  if (from >= size() || to >= size()) return std::nullopt;
  const auto& edges = out_[from];
  auto it = std::lower_bound(edges.begin(), edges.end(), to,
                             [](const Edge& e, std::size_t v) { return e.to < v; });
  if (it != edges.end() && it->to == to) return it->label;
  return std::nullopt;
}

std::size_t AssetGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& e : out_) n += e.size();
  return n;
}

void scenario_out_edges(const Network& network, std::size_t from,
                        std::vector<Edge>& out, unsigned jobs) {
  const std::size_t m = network.size();
  std::vector<EdgeLabel> labels(m);
  detail::parallel_for(m, jobs, [&](std::size_t to) {
    if (to == from || !network.reachable(from, to)) return;
    const TreeSolution sol = solve_tree(build_tree(network, from, to));
    labels[to] = EdgeLabel{sol.metrics.time, sol.metrics.prob};
  });
  out.clear();
  for (std::size_t to = 0; to < m; ++to) {
    if (labels[to].prob > 0.0) out.push_back(Edge{to, labels[to]});
  }
}

AssetGraph build_asset_graph(const Network& network, unsigned jobs) {
  std::vector<std::string> names;
  names.reserve(network.size());
  for (std::size_t i = 0; i < network.size(); ++i) names.push_back(network.host(i).id);
  AssetGraph graph(std::move(names));

  const std::size_t m = network.size();
  std::vector<std::vector<Edge>> rows(m);
  detail::parallel_for(m, jobs, [&](std::size_t from) {
    scenario_out_edges(network, from, rows[from], 1);
  });
  for (std::size_t from = 0; from < m; ++from) {
    for (const Edge& e : rows[from]) graph.set_edge(from, e.to, e.label);
  }
  return graph;
}

AssetGraph build_asset_graph(const Scenario& scenario, unsigned jobs) {
  const Network network(scenario);
  return build_asset_graph(network, jobs);
}

PlanMetrics fold_path(const AssetGraph& graph, std::span<const std::size_t> path) {
  PlanMetrics m{0.0, 1.0};
  for (std::size_t i = 1; i < path.size(); ++i) {
    const auto e = graph.edge(path[i - 1], path[i]);
    if (!e) throw std::invalid_argument("path uses a missing edge");
    m.time = m.time + m.prob * e->time;
    m.prob = m.prob * e->prob;
  }
  return m;
}

AllPairsResult modified_floyd_warshall(const AssetGraph& graph) {
  const std::size_t m = graph.size();
  AllPairsResult r;
  r.size = m;
  r.time.assign(m * m, kInf);
  r.prob.assign(m * m, 0.0);
  r.pred.assign(m * m, kNoPredecessor);
  for (std::size_t i = 0; i < m; ++i) {
    r.time[i * m + i] = 0.0;
    r.prob[i * m + i] = 1.0;
    for (const Edge& e : graph.out_edges(i)) {
      r.time[i * m + e.to] = e.label.time;
      r.prob[i * m + e.to] = e.label.prob;
      r.pred[i * m + e.to] = i;
    }
  }

  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      const double t_ik = r.time[i * m + k];
      const double p_ik = r.prob[i * m + k];
      for (std::size_t j = 0; j < m; ++j) {
        ++r.inner_iterations;
        const double p_kj = r.prob[k * m + j];
        if (p_ik == 0.0 || p_kj == 0.0) continue;  // no i -> k -> j route
        const double t_new = t_ik + p_ik * r.time[k * m + j];
        const double p_new = p_ik * p_kj;
        if (improves(t_new, p_new, r.time[i * m + j], r.prob[i * m + j])) {
          r.time[i * m + j] = t_new;
          r.prob[i * m + j] = p_new;
          r.pred[i * m + j] = r.pred[k * m + j];
        }
      }
    }
  }

  // A relaxed entry can drift from its predecessor chain when a prefix it
  // was built on improves later, and the nesting of the products differs
  // from a left fold. Report what the reconstructed path actually yields.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j || r.prob[i * m + j] == 0.0) continue;
      const auto path = reconstruct_path(r, i, j);
      if (!path) continue;
      const PlanMetrics folded = fold_path(graph, *path);
      if (folded.time != r.time[i * m + j] || folded.prob != r.prob[i * m + j]) {
        ++r.refolded_entries;
        r.time[i * m + j] = folded.time;
        r.prob[i * m + j] = folded.prob;
      }
    }
  }
  return r;
}

SingleSourceResult modified_dijkstra(std::size_t m,
                                     std::span<const std::size_t> sources,
                                     const EdgeSource& edges) {
  SingleSourceResult r;
  r.sources.assign(sources.begin(), sources.end());
  r.time.assign(m, kInf);
  r.prob.assign(m, 0.0);
  r.pred.assign(m, kNoPredecessor);
  for (std::size_t s : sources) {
    if (s >= m) throw std::invalid_argument("source out of range");
    r.time[s] = 0.0;
    r.prob[s] = 1.0;
  }

  std::vector<char> settled(m, 0);
  std::vector<std::size_t> queue(m);
  for (std::size_t v = 0; v < m; ++v) queue[v] = v;
  std::vector<Edge> out;

  while (!queue.empty()) {
    std::size_t best = 0;
    for (std::size_t q = 1; q < queue.size(); ++q) {
      ++r.selection_scans;
      const std::size_t a = queue[q];
      const std::size_t b = queue[best];
      if (improves(r.time[a], r.prob[a], r.time[b], r.prob[b])) best = q;
    }
    ++r.selection_scans;
    const std::size_t u = queue[best];
    queue[best] = queue.back();
    queue.pop_back();
    if (r.prob[u] == 0.0) break;  // everything left is unreachable
    settled[u] = 1;

    edges(u, out);
    for (const Edge& e : out) {
      if (settled[e.to]) continue;
      ++r.relaxations;
      const double t_new = r.time[u] + r.prob[u] * e.label.time;
      const double p_new = r.prob[u] * e.label.prob;
      if (improves(t_new, p_new, r.time[e.to], r.prob[e.to])) {
        r.time[e.to] = t_new;
        r.prob[e.to] = p_new;
        r.pred[e.to] = u;
      }
    }
  }
  return r;
}

SingleSourceResult modified_dijkstra(const AssetGraph& graph, std::size_t source) {
  const std::size_t sources[] = {source};
  return modified_dijkstra(graph.size(), sources,
                           [&graph](std::size_t u, std::vector<Edge>& out) {
                             const auto e = graph.out_edges(u);
                             out.assign(e.begin(), e.end());
                           });
}

std::optional<std::vector<std::size_t>> reconstruct_path(
    const AllPairsResult& r, std::size_t source, std::size_t goal) {
  const std::size_t m = r.size;
  if (source >= m || goal >= m) throw std::invalid_argument("node out of range");
  if (source == goal) return std::vector<std::size_t>{source};
  if (r.prob[source * m + goal] == 0.0) return std::nullopt;
  std::vector<std::size_t> path{goal};
  std::size_t v = goal;
  while (v != source) {
    v = r.pred[source * m + v];
    if (v == kNoPredecessor || path.size() > m) return std::nullopt;
    path.push_back(v);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<std::vector<std::size_t>> reconstruct_path(
    const SingleSourceResult& r, std::size_t goal) {
  if (goal >= r.time.size()) throw std::invalid_argument("node out of range");
  if (r.prob[goal] == 0.0) return std::nullopt;
  std::vector<std::size_t> path{goal};
  std::size_t v = goal;
  while (r.pred[v] != kNoPredecessor) {
    v = r.pred[v];
    path.push_back(v);
    if (path.size() > r.time.size()) return std::nullopt;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

struct OracleSearch {
  const AssetGraph& graph;
  std::size_t goal;
  std::vector<std::size_t> stack;
  std::vector<char> on_path;
  std::optional<PathChoice> best;

  void visit(std::size_t u, PlanMetrics m) {
    if (u == goal) {
      if (!best || ratio_cmp(success_ratio(m), success_ratio(best->metrics)) < 0) {
        best = PathChoice{stack, m};
      }
      return;
    }
    for (const Edge& e : graph.out_edges(u)) {
      if (on_path[e.to]) continue;
      on_path[e.to] = 1;
      stack.push_back(e.to);
      visit(e.to, PlanMetrics{m.time + m.prob * e.label.time,
                              m.prob * e.label.prob});
      stack.pop_back();
      on_path[e.to] = 0;
    }
  }
};

}  // namespace

std::optional<PathChoice> enumerate_paths_oracle(const AssetGraph& graph,
                                                 std::size_t source,
                                                 std::size_t goal) {
  if (graph.size() > kMaxOracleNodes) {
    throw std::invalid_argument("path enumeration supports at most 8 nodes");
  }
  if (source >= graph.size() || goal >= graph.size()) {
    throw std::invalid_argument("node out of range");
  }
  OracleSearch search{graph, goal, {source}, std::vector<char>(graph.size(), 0), {}};
  search.on_path[source] = 1;
  search.visit(source, PlanMetrics{0.0, 1.0});
  return search.best;
}

}  // namespace probplan
