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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "oracle.hpp"
#include "probplan/asset_graph.hpp"
#include "probplan/attack_tree.hpp"
#include "probplan/generator.hpp"
#include "probplan/scenario.hpp"

using namespace probplan;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// s=0, m=1, g=2
AssetGraph line(bool direct) {
  AssetGraph g({"s", "m", "g"});
  g.set_edge(0, 1, {2, 0.5});
  g.set_edge(1, 2, {2, 0.5});
  if (direct) g.set_edge(0, 2, {10, 0.9});
  return g;
}

AssetGraph random_graph(std::mt19937_64& rng, std::size_t n, double density) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("h" + std::to_string(i));
  AssetGraph g(names);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || oracle::unit(rng) >= density) continue;
      g.set_edge(i, j, {20 * oracle::unit(rng), 1 - oracle::unit(rng)});
    }
  }
  return g;
}

oracle::Graph dense(const AssetGraph& g) {
  oracle::Graph d{g.size(), std::vector<oracle::Step>(g.size() * g.size(), {0, 0})};
  for (std::size_t u = 0; u < g.size(); ++u) {
    for (const Edge& e : g.out_edges(u)) d.label[u * g.size() + e.to] = {e.label.time, e.label.prob};
  }
  return d;
}

}  // namespace

TEST_SUITE("asset_graph") {

TEST_CASE("edges") {
  AssetGraph g({"a", "b", "c"});
  g.set_edge(0, 2, {1, 0.5});
  g.set_edge(0, 1, {2, 0.25});
  CHECK(g.edge_count() == 2);
  CHECK(g.out_edges(0)[0].to == 1);  // sorted
  g.set_edge(0, 1, {3, 0});         // prob 0 removes
  CHECK(g.edge_count() == 1);
  CHECK(!g.edge(0, 1));
  CHECK(g.edge(0, 2) == EdgeLabel{1, 0.5});
  CHECK_THROWS_AS(g.set_edge(1, 1, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(g.set_edge(0, 1, {1, 1.5}), std::invalid_argument);
  CHECK_THROWS_AS(g.set_edge(0, 1, {kInf, 0.5}), std::invalid_argument);
  CHECK(g.find("c") == 2u);
  CHECK(!g.find("z"));
}

TEST_CASE("build_asset_graph labels edges with tree solutions") {
  const Scenario s = load_scenario(oracle::read_file(oracle::fixture("line3.json")));
  const AssetGraph g = build_asset_graph(s);
  CHECK(g.edge_count() == 2);
  CHECK(g.edge(0, 1) == EdgeLabel{2, 0.5});
  CHECK(g.edge(1, 2) == EdgeLabel{2, 0.5});
  CHECK(!g.edge(0, 2));  // subnets a and c do not reach each other

  const Scenario gen = generate_scenario(15, 3);
  const Network net(gen);
  const AssetGraph full = build_asset_graph(net);
  for (std::size_t i = 0; i < net.size(); ++i) {
    for (std::size_t j = 0; j < net.size(); ++j) {
      if (i == j) continue;
      const PlanMetrics m = solve_tree(build_tree(net, i, j)).metrics;
      const auto e = full.edge(i, j);
      if (m.prob > 0) {
        REQUIRE(e);
        CHECK(*e == EdgeLabel{m.time, m.prob});
      } else {
        CHECK(!e);
      }
      if (!net.reachable(i, j)) CHECK(!e);
    }
  }
  // Parallel build merges to the same graph.
  const AssetGraph par = build_asset_graph(net, 4);
  for (std::size_t i = 0; i < net.size(); ++i) {
    for (std::size_t j = 0; j < net.size(); ++j) CHECK(par.edge(i, j) == full.edge(i, j));
  }
}

TEST_CASE("line instance") {
  const AssetGraph g = line(false);
  const AllPairsResult fw = modified_floyd_warshall(g);
  CHECK(fw.at(0, 2) == PlanMetrics{3, 0.25});
  CHECK(reconstruct_path(fw, 0, 2) == std::vector<std::size_t>{0, 1, 2});
  const SingleSourceResult dj = modified_dijkstra(g, 0);
  CHECK(dj.at(2) == PlanMetrics{3, 0.25});
  CHECK(reconstruct_path(dj, 2) == std::vector<std::size_t>{0, 1, 2});
  for (std::size_t i = 0; i < 3; ++i) CHECK(fw.at(i, i) == PlanMetrics{0, 1});
  CHECK(dj.at(0) == PlanMetrics{0, 1});
  CHECK(reconstruct_path(dj, 0) == std::vector<std::size_t>{0});
  CHECK(reconstruct_path(fw, 1, 1) == std::vector<std::size_t>{1});

  const auto best = oracle::best_path(dense(g), 0, 2);
  REQUIRE(best);
  CHECK(best->t == 3);
  CHECK(best->p == 0.25);
  const auto lib = enumerate_paths_oracle(g, 0, 2);
  REQUIRE(lib);
  CHECK(lib->path == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("a direct edge with a better ratio wins") {
  // 10 / 0.9 = 11.1 < 3 / 0.25 = 12
  const AssetGraph g = line(true);
  const AllPairsResult fw = modified_floyd_warshall(g);
  CHECK(fw.at(0, 2) == PlanMetrics{10, 0.9});
  CHECK(reconstruct_path(fw, 0, 2) == std::vector<std::size_t>{0, 2});
  const SingleSourceResult dj = modified_dijkstra(g, 0);
  CHECK(dj.at(2) == PlanMetrics{10, 0.9});
  CHECK(reconstruct_path(dj, 2) == std::vector<std::size_t>{0, 2});
  const auto best = oracle::best_path(dense(g), 0, 2);
  REQUIRE(best);
  CHECK(best->path == std::vector<std::size_t>{0, 2});
  CHECK(enumerate_paths_oracle(g, 0, 2)->metrics == PlanMetrics{10, 0.9});
}

TEST_CASE("unreachable nodes") {
  AssetGraph g({"a", "b", "c"});
  g.set_edge(0, 1, {1, 0.5});
  const SingleSourceResult dj = modified_dijkstra(g, 0);
  CHECK(dj.time[2] == kInf);
  CHECK(dj.prob[2] == 0);
  CHECK(dj.pred[2] == kNoPredecessor);
  CHECK(!reconstruct_path(dj, 2));
  const AllPairsResult fw = modified_floyd_warshall(g);
  CHECK(fw.at(0, 2).prob == 0);
  CHECK(!reconstruct_path(fw, 0, 2));
  CHECK(!enumerate_paths_oracle(g, 0, 2));

  AssetGraph one({"a", "b"});
  one.set_edge(0, 1, {4, 0.5});
  const auto e = enumerate_paths_oracle(one, 0, 1);
  REQUIRE(e);
  CHECK(e->path == std::vector<std::size_t>{0, 1});
  CHECK(e->metrics == PlanMetrics{4, 0.5});
}

TEST_CASE("oracle size limit") {
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(enumerate_paths_oracle(random_graph(rng, 9, 0.5), 0, 1),
                  std::invalid_argument);
}

TEST_CASE("counters") {
  std::mt19937_64 rng(41);
  for (std::size_t n : {1u, 2u, 5u, 9u, 16u}) {
    const AssetGraph g = random_graph(rng, n, 0.6);
    CHECK(modified_floyd_warshall(g).inner_iterations == n * n * n);
    const SingleSourceResult dj = modified_dijkstra(g, 0);
    CHECK(dj.relaxations <= g.edge_count());
    CHECK(dj.selection_scans <= n * n);
  }
}

TEST_CASE("returned paths refold exactly to the reported metrics") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 2 + rng() % 7;
    const AssetGraph g = random_graph(rng, n, 0.2 + 0.6 * oracle::unit(rng));
    const AllPairsResult fw = modified_floyd_warshall(g);
    const SingleSourceResult dj = modified_dijkstra(g, 0);
    for (std::size_t t = 0; t < n; ++t) {
      if (const auto p = reconstruct_path(dj, t)) CHECK(fold_path(g, *p) == dj.at(t));
      for (std::size_t s = 0; s < n; ++s) {
        if (const auto p = reconstruct_path(fw, s, t)) {
          CHECK(fold_path(g, *p) == fw.at(s, t));
          std::vector<std::size_t> sorted = *p;
          std::sort(sorted.begin(), sorted.end());
          CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
        }
      }
    }
  }
}

TEST_CASE("result is never worse than a direct edge or a two-hop path") {
  // Holds for the Dijkstra variant: extending a prefix maps its ratio r to
  // (r + t) / p, which is monotone in r. Floyd-Warshall joins subpaths chosen
  // by ratio alone, so only the direct-edge bound is guaranteed there; its
  // two-hop misses are counted and reported.
  std::mt19937_64 rng(43);
  const auto worse = [](double t, double p, const oracle::Step& c) {
    return t * c.p > c.t * p * (1 + 1e-12);
  };
  int targets = 0;
  int fw_misses = 0;
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = 3 + rng() % 6;
    const AssetGraph g = random_graph(rng, n, 0.5);
    const oracle::Graph d = dense(g);
    const SingleSourceResult dj = modified_dijkstra(g, 0);
    const AllPairsResult fw = modified_floyd_warshall(g);
    for (std::size_t t = 1; t < n; ++t) {
      ++targets;
      if (d.at(0, t).p > 0) {
        CHECK(!worse(dj.time[t], dj.prob[t], d.at(0, t)));
        CHECK(!worse(fw.at(0, t).time, fw.at(0, t).prob, d.at(0, t)));
      }
      bool fw_missed = false;
      for (std::size_t k = 1; k < n; ++k) {
        if (k == t || d.at(0, k).p <= 0 || d.at(k, t).p <= 0) continue;
        const oracle::Step two{d.at(0, k).t + d.at(0, k).p * d.at(k, t).t,
                               d.at(0, k).p * d.at(k, t).p};
        CHECK(!worse(dj.time[t], dj.prob[t], two));
        fw_missed = fw_missed || worse(fw.at(0, t).time, fw.at(0, t).prob, two);
      }
      if (fw_missed) {
        ++fw_misses;
        const auto p = reconstruct_path(fw, 0, t);
        REQUIRE(p);
        CHECK(fold_path(g, *p) == fw.at(0, t));
      }
    }
  }
  MESSAGE("floyd-warshall beaten by a two-hop path at ", fw_misses, " of ", targets,
          " targets");
  CHECK(fw_misses * 100 < targets);
}

TEST_CASE("library oracle agrees with the test oracle") {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 2 + rng() % 7;
    const AssetGraph g = random_graph(rng, n, 0.4);
    const auto lib = enumerate_paths_oracle(g, 0, n - 1);
    const auto ref = oracle::best_path(dense(g), 0, n - 1);
    REQUIRE(lib.has_value() == ref.has_value());
    if (!lib) continue;
    CHECK(lib->metrics.time * ref->p == doctest::Approx(ref->t * lib->metrics.prob));
  }
}

TEST_CASE("multi-source search starts from every source") {
  const AssetGraph g = line(false);
  const std::vector<std::size_t> sources{0, 1};
  const SingleSourceResult r =
      modified_dijkstra(g.size(), sources, [&g](std::size_t u, std::vector<Edge>& out) {
        const auto e = g.out_edges(u);
        out.assign(e.begin(), e.end());
      });
  CHECK(r.at(1) == PlanMetrics{0, 1});
  CHECK(r.at(2) == PlanMetrics{2, 0.5});
  CHECK(reconstruct_path(r, 2) == std::vector<std::size_t>{1, 2});
}

}  // TEST_SUITE
