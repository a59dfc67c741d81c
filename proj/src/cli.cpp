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

#include "probplan/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "parallel.hpp"
#include "probplan/asset_graph.hpp"
#include "probplan/attack_tree.hpp"
#include "probplan/bench.hpp"
#include "probplan/generator.hpp"
#include "probplan/ppddl.hpp"
#include "probplan/report.hpp"
#include "probplan/scenario.hpp"
#include "probplan/simulator.hpp"

namespace probplan::cli {
namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out.flush()) throw InputError("cannot write '" + path + "'");
}

struct ScenarioInput {
  std::string path;
  std::string domain;

  Scenario load() const {
    Scenario s = load_scenario(read_file(path));
    if (!domain.empty()) merge_fragment(s, parse_ppddl(read_file(domain)));
    return s;
  }
};

void add_scenario_options(CLI::App& cmd, ScenarioInput& in) {
  cmd.add_option("scenario", in.path, "Scenario file")->required();
  cmd.add_option("--domain", in.domain, "PPDDL action fragment merged into the scenario");
}

std::string goal_or(const Scenario& s, const std::string& flag, const char* what) {
  if (!flag.empty()) return flag;
  if (!s.goal) throw InputError(std::string("no ") + what + " given and the scenario has no goal");
  return *s.goal;
}

std::optional<std::vector<std::size_t>> dijkstra_path(const Network& net, std::size_t src,
                                                      std::size_t goal, unsigned jobs,
                                                      PlanMetrics& metrics) {
  const SingleSourceResult r = modified_dijkstra(
      net.size(), std::vector<std::size_t>{src},
      [&](std::size_t from, std::vector<Edge>& out) {
        scenario_out_edges(net, from, out, jobs);
      });
  metrics = r.at(goal);
  return reconstruct_path(r, goal);
}

// ---- plan ----

struct PlanArgs {
  ScenarioInput input;
  std::string source;
  std::string goal;
  std::string algorithm = "dijkstra";
  bool json = false;
  std::string dump_tree;
  std::string dump_graph;
  unsigned jobs = 1;
};

int cmd_plan(const PlanArgs& a, std::ostream& out, std::ostream& err) {
  const Scenario s = a.input.load();
  const Network net(s);
  const std::size_t src = net.host_index(a.source.empty() ? s.source : a.source);
  const std::size_t goal = net.host_index(goal_or(s, a.goal, "goal"));

  std::optional<AssetGraph> graph;
  if (a.algorithm == "floyd-warshall" || !a.dump_graph.empty()) {
    graph = build_asset_graph(net, a.jobs);
  }
  if (!a.dump_graph.empty()) write_file(a.dump_graph, graph_json(*graph).dump(2) + "\n");

  PlanMetrics metrics;
  std::optional<std::vector<std::size_t>> path;
  if (a.algorithm == "floyd-warshall") {
    const AllPairsResult r = modified_floyd_warshall(*graph);
    metrics = r.at(src, goal);
    path = reconstruct_path(r, src, goal);
  } else {
    path = dijkstra_path(net, src, goal, a.jobs, metrics);
  }
  if (!path || metrics.prob <= 0.0) {
    err << "no path from " << net.host(src).id << " to " << net.host(goal).id << '\n';
    return kExitNoPath;
  }

  Json hops = Json::array();
  Json trees = Json::array();
  for (std::size_t i = 1; i < path->size(); ++i) {
    const AttackTree tree = build_tree(net, (*path)[i - 1], (*path)[i]);
    const TreeSolution sol = solve_tree(tree);
    Json hop;
    hop["from"] = tree.source();
    hop["to"] = tree.target();
    hop["T"] = sol.metrics.time;
    hop["P"] = sol.metrics.prob;
    Json actions = Json::array();
    for (NodeId id : sol.plan) actions.push_back(action_json(tree.node(id).action().action));
    hop["actions"] = std::move(actions);
    hops.push_back(std::move(hop));
    if (!a.dump_tree.empty()) trees.push_back(tree_json(tree, sol));
  }
  if (!a.dump_tree.empty()) write_file(a.dump_tree, trees.dump(2) + "\n");

  Json report;
  Json hosts = Json::array();
  for (std::size_t v : *path) hosts.push_back(net.host(v).id);
  report["source"] = net.host(src).id;
  report["goal"] = net.host(goal).id;
  report["path"] = hosts;
  report["T"] = metrics.time;
  report["P"] = metrics.prob;
  report["hops"] = hops;

  if (a.json) {
    out << report.dump(2) << '\n';
    return kExitOk;
  }
  out << "path:";
  for (std::size_t i = 0; i < hosts.size(); ++i) {
    out << (i == 0 ? " " : " -> ") << hosts[i].get<std::string>();
  }
  out << "\nT " << format_number(metrics.time) << "\nP " << format_number(metrics.prob)
      << '\n';
  for (const auto& hop : hops) {
    out << "hop " << hop["from"].get<std::string>() << " -> "
        << hop["to"].get<std::string>() << "  T " << format_number(hop["T"].get<double>())
        << "  P " << format_number(hop["P"].get<double>()) << '\n';
    for (const auto& act : hop["actions"]) {
      out << "  " << act["id"].get<std::string>() << "  p "
          << format_number(act["prob"].get<double>()) << "  t "
          << format_number(act["cost"].get<double>()) << '\n';
    }
  }
  return kExitOk;
}

// ---- solve-tree ----

// Every action of the policy in the order it would be tried, fallbacks
// included.
void flatten(const PlanNode& node, std::vector<Action>& out) {
  if (node.kind == PlanNode::Kind::kStep) {
    out.push_back(node.action);
    return;
  }
  for (const PlanNode& child : node.children) flatten(child, out);
}

struct SolveTreeArgs {
  ScenarioInput input;
  std::string source;
  std::string target;
  bool json = false;
  std::string dump_tree;
};

int cmd_solve_tree(const SolveTreeArgs& a, std::ostream& out, std::ostream&) {
  const Scenario s = a.input.load();
  const Network net(s);
  const std::size_t src = net.host_index(a.source.empty() ? s.source : a.source);
  const std::size_t dst = net.host_index(goal_or(s, a.target, "target"));
  const AttackTree tree = build_tree(net, src, dst);
  const TreeSolution sol = solve_tree(tree);
  if (!a.dump_tree.empty()) write_file(a.dump_tree, tree_json(tree, sol).dump(2) + "\n");

  const int code = sol.metrics.prob > 0.0 ? kExitOk : kExitNoPath;
  std::vector<Action> policy_actions;
  flatten(tree_policy(tree, sol), policy_actions);
  if (a.json) {
    Json report;
    report["source"] = tree.source();
    report["target"] = tree.target();
    report["T"] = sol.metrics.time;
    report["P"] = sol.metrics.prob;
    Json actions = Json::array();
    for (NodeId id : sol.plan) actions.push_back(action_json(tree.node(id).action().action));
    report["actions"] = std::move(actions);
    Json policy = Json::array();
    for (const Action& act : policy_actions) policy.push_back(action_json(act));
    report["policy"] = std::move(policy);
    out << report.dump(2) << '\n';
    return code;
  }
  const auto print = [&out](const Action& act, std::size_t step) {
    out << "  " << step << ". " << act.id << "  p " << format_number(act.prob) << "  t "
        << format_number(act.cost) << '\n';
  };
  out << "tree " << tree.source() << " -> " << tree.target() << "\nfirst choice\n";
  std::size_t step = 1;
  for (NodeId id : sol.plan) print(tree.node(id).action().action, step++);
  out << "policy\n";
  step = 1;
  for (const Action& act : policy_actions) print(act, step++);
  out << "T " << format_number(sol.metrics.time) << "\nP "
      << format_number(sol.metrics.prob) << '\n';
  return code;
}

// ---- simulate ----

struct SimulateArgs {
  ScenarioInput input;
  std::string source;
  std::string goal;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  bool replan = false;
  bool trace = false;
  unsigned jobs = 1;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const Scenario s = a.input.load();
  const Network net(s);
  const std::size_t src = net.host_index(a.source.empty() ? s.source : a.source);
  const std::size_t goal = net.host_index(goal_or(s, a.goal, "goal"));
  if (a.trials == 0) throw InputError("--trials must be at least 1");

  PlanMetrics metrics;
  const auto path = dijkstra_path(net, src, goal, a.jobs, metrics);
  if (!path || metrics.prob <= 0.0) {
    err << "no path from " << net.host(src).id << " to " << net.host(goal).id << '\n';
    return kExitNoPath;
  }

  Json report;
  report["mode"] = a.replan ? "replan" : "static";
  report["source"] = net.host(src).id;
  report["goal"] = net.host(goal).id;
  report["seed"] = a.seed;
  Json analytic;
  analytic["T"] = metrics.time;
  analytic["P"] = metrics.prob;
  report["analytic"] = analytic;

  if (!a.replan) {
    const PlanNode policy = path_policy(net, *path);
    report["stats"] = stats_json(run_trials(policy, a.trials, a.seed, a.jobs));
    if (a.trace) {
      Json traces = Json::array();
      for (std::size_t i = 0; i < a.trials; ++i) {
        const TrialOutcome t = simulate_plan(policy, trial_seed(a.seed, i));
        Json x;
        x["success"] = t.success;
        x["elapsed"] = t.elapsed;
        Json steps = Json::array();
        for (const auto& [id, ok] : t.transcript) {
          steps.push_back(Json{{"action", id}, {"success", ok}});
        }
        x["transcript"] = std::move(steps);
        traces.push_back(std::move(x));
      }
      report["trials"] = std::move(traces);
    }
  } else {
    const AssetGraph graph = build_asset_graph(net, a.jobs);
    std::vector<Episode> episodes(a.trials);
    detail::parallel_for(a.trials, a.jobs, [&](std::size_t i) {
      episodes[i] = replanning_run(net, graph, src, goal, trial_seed(a.seed, i));
    });
    std::vector<double> elapsed(a.trials);
    std::vector<char> success(a.trials);
    for (std::size_t i = 0; i < a.trials; ++i) {
      elapsed[i] = episodes[i].elapsed;
      success[i] = episodes[i].success ? 1 : 0;
    }
    report["stats"] = stats_json(summarize(elapsed, success));
    if (a.trace) {
      Json traces = Json::array();
      for (const Episode& e : episodes) traces.push_back(episode_json(e));
      report["episodes"] = std::move(traces);
    }
  }
  out << report.dump(2) << '\n';
  return kExitOk;
}

// ---- bench ----

struct BenchArgs {
  std::vector<std::size_t> sizes{100, 200, 400, 800};
  std::uint64_t seed = 1;
  std::string out;
  std::string config;
  unsigned jobs = 1;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream&) {
  const GeneratorConfig config =
      a.config.empty() ? GeneratorConfig{} : load_generator_config(read_file(a.config));
  for (std::size_t m : a.sizes) {
    if (m < kMinGeneratedHosts) {
      throw InputError("sizes must be at least " + std::to_string(kMinGeneratedHosts));
    }
  }
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out, std::ios::binary);
    if (!file) throw InputError("cannot write '" + a.out + "'");
  }
  std::ostream& csv = a.out.empty() ? out : file;
  write_bench_header(csv);
  for (std::size_t m : a.sizes) {
    write_bench_row(csv, bench_isolated(m, a.seed, config, a.jobs));
    csv.flush();
  }
  return kExitOk;
}

// ---- gen ----

struct GenArgs {
  std::size_t hosts = 0;
  std::uint64_t seed = 1;
  std::string config;
  std::string out;
};

int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream&) {
  const GeneratorConfig config =
      a.config.empty() ? GeneratorConfig{} : load_generator_config(read_file(a.config));
  const std::string text = save_scenario(generate_scenario(a.hosts, a.seed, config));
  if (a.out.empty()) {
    out << text;
  } else {
    write_file(a.out, text);
  }
  return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probabilistic attack planning over host networks", "probplan"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  const std::vector<std::string> algorithms{"dijkstra", "floyd-warshall"};

  PlanArgs plan;
  auto* p = app.add_subcommand("plan", "Plan an attack path from source to goal");
  add_scenario_options(*p, plan.input);
  p->add_option("--source", plan.source, "Start host (default: scenario source)");
  p->add_option("--goal", plan.goal, "Goal host (default: scenario goal)");
  p->add_option("--algorithm", plan.algorithm, "Path search")
      ->check(CLI::IsMember(algorithms));
  p->add_flag("--json", plan.json, "Machine-readable output");
  p->add_option("--dump-tree", plan.dump_tree, "Write the solved per-hop trees as JSON");
  p->add_option("--dump-graph", plan.dump_graph, "Write the asset graph as JSON");
  p->add_option("--jobs", plan.jobs, "Worker threads for edge evaluation")
      ->check(CLI::PositiveNumber);

  SolveTreeArgs tree;
  auto* t = app.add_subcommand("solve-tree", "Solve the attack tree for one host pair");
  add_scenario_options(*t, tree.input);
  t->add_option("--source", tree.source, "Attacking host (default: scenario source)");
  t->add_option("--target", tree.target, "Target host (default: scenario goal)");
  t->add_flag("--json", tree.json, "Machine-readable output");
  t->add_option("--dump-tree", tree.dump_tree, "Write the solved tree as JSON");

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Monte Carlo execution of the plan");
  add_scenario_options(*s, sim.input);
  s->add_option("--source", sim.source, "Start host (default: scenario source)");
  s->add_option("--goal", sim.goal, "Goal host (default: scenario goal)");
  s->add_option("--trials", sim.trials, "Number of trials")->check(CLI::PositiveNumber);
  s->add_option("--seed", sim.seed, "Random seed");
  s->add_flag("--replan", sim.replan, "Replan after every observed action");
  s->add_flag("--trace", sim.trace, "Include every trial's transcript");
  s->add_option("--jobs", sim.jobs, "Worker threads")->check(CLI::PositiveNumber);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Runtime and memory scaling over generated networks");
  b->add_option("--sizes", bench.sizes, "Host counts")->delimiter(',');
  b->add_option("--seed", bench.seed, "Generator seed");
  b->add_option("--out", bench.out, "CSV output path (default: stdout)");
  b->add_option("--config", bench.config, "Generator config JSON");
  b->add_option("--jobs", bench.jobs, "Worker threads for edge evaluation")
      ->check(CLI::PositiveNumber);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a random scenario");
  g->add_option("--hosts", gen.hosts, "Number of hosts")->required();
  g->add_option("--seed", gen.seed, "Generator seed");
  g->add_option("--config", gen.config, "Generator config JSON");
  g->add_option("--out", gen.out, "Output path (default: stdout)");

  std::vector<std::string> argv(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (p->parsed()) return cmd_plan(plan, out, err);
    if (t->parsed()) return cmd_solve_tree(tree, out, err);
    if (s->parsed()) return cmd_simulate(sim, out, err);
    if (b->parsed()) return cmd_bench(bench, out, err);
    if (g->parsed()) return cmd_gen(gen, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const SemanticError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const PpddlError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace probplan::cli
