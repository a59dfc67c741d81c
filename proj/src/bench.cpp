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

#include "probplan/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#if defined(__GLIBC__)
#include <malloc.h>
#endif
#if defined(__unix__)
#include <sys/wait.h>
#include <unistd.h>
#endif
#include <stdexcept>
#include <type_traits>

#include "probplan/asset_graph.hpp"
#include "probplan/generator.hpp"
#include "probplan/report.hpp"

namespace probplan {
namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

std::optional<std::uint64_t> status_field(std::string_view field) {
  std::ifstream in("/proc/self/status");
  std::string line;
  while (std::getline(in, line)) {
    if (line.compare(0, field.size(), field) == 0 && line.size() > field.size() &&
        line[field.size()] == ':') {
      return std::stoull(line.substr(field.size() + 1)) * 1024;  // kB
    }
  }
  return std::nullopt;
}

bool reset_peak() {
  std::ofstream out("/proc/self/clear_refs");
  if (!out) return false;
  out << "5";
  out.flush();
  return static_cast<bool>(out);
}

}  // namespace

std::optional<std::uint64_t> resident_bytes() { return status_field("VmRSS"); }
std::optional<std::uint64_t> peak_resident_bytes() { return status_field("VmHWM"); }

BenchRow bench_one(std::size_t hosts, std::uint64_t seed,
                   const GeneratorConfig& config, unsigned jobs) {
#if defined(__GLIBC__)
  malloc_trim(0);
#endif
  const bool relative = reset_peak();
  const std::uint64_t baseline = relative ? resident_bytes().value_or(0) : 0;

  BenchRow row;
  row.M = hosts;
  row.seed = seed;
  {
    const Scenario scenario = generate_scenario(hosts, seed, config);

    const auto t0 = Clock::now();
    const Network network(scenario);
    const std::size_t source = network.host_index(scenario.source);
    const std::size_t goal = network.host_index(*scenario.goal);
    const auto t1 = Clock::now();

    double edge_ms = 0.0;
    const SingleSourceResult result = modified_dijkstra(
        network.size(), std::vector<std::size_t>{source},
        [&](std::size_t from, std::vector<Edge>& out) {
          const auto e0 = Clock::now();
          scenario_out_edges(network, from, out, jobs);
          edge_ms += ms_between(e0, Clock::now());
        });
    const auto t2 = Clock::now();

    row.graph_build_ms = ms_between(t0, t1) + edge_ms;
    row.solve_ms = std::max(0.0, ms_between(t1, t2) - edge_ms);
    row.goal_T = result.time[goal];
    row.goal_P = result.prob[goal];
  }
  const std::uint64_t peak = peak_resident_bytes().value_or(0);
  row.peak_memory_bytes = peak > baseline ? peak - baseline : 0;
  return row;
}

BenchRow bench_isolated(std::size_t hosts, std::uint64_t seed,
                        const GeneratorConfig& config, unsigned jobs) {
#if defined(__unix__)
  static_assert(std::is_trivially_copyable_v<BenchRow>);
#if defined(__GLIBC__)
  malloc_trim(0);
#endif
  int fds[2];
  if (pipe(fds) != 0) throw std::runtime_error("pipe failed");
  const pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    throw std::runtime_error("fork failed");
  }
  if (pid == 0) {
    close(fds[0]);
    int code = 1;
    try {
      // Faults in code and allocator state first; those pages are not
      // inherited as resident by the child.
      bench_one(kMinGeneratedHosts, seed, config, jobs);
      const BenchRow row = bench_one(hosts, seed, config, jobs);
      const char* p = reinterpret_cast<const char*>(&row);
      std::size_t left = sizeof row;
      while (left > 0) {
        const ssize_t n = write(fds[1], p, left);
        if (n <= 0) break;
        p += n;
        left -= static_cast<std::size_t>(n);
      }
      code = left == 0 ? 0 : 1;
    } catch (...) {
    }
    _exit(code);
  }
  close(fds[1]);
  BenchRow row;
  char* p = reinterpret_cast<char*>(&row);
  std::size_t got = 0;
  while (got < sizeof row) {
    const ssize_t n = read(fds[0], p + got, sizeof row - got);
    if (n <= 0) break;
    got += static_cast<std::size_t>(n);
  }
  close(fds[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  if (got != sizeof row || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw std::runtime_error("benchmark worker for M=" + std::to_string(hosts) + " failed");
  }
  return row;
#else
  return bench_one(hosts, seed, config, jobs);
#endif
}

void write_bench_header(std::ostream& out) { out << kBenchCsvHeader << '\n'; }

void write_bench_row(std::ostream& out, const BenchRow& row) {
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.3f,%.3f", row.graph_build_ms, row.solve_ms);
  out << row.M << ',' << timing << ',' << row.peak_memory_bytes << ','
      << format_number(row.goal_T) << ',' << format_number(row.goal_P) << ','
      << row.seed << '\n';
}

}  // namespace probplan
