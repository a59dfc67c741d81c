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

#ifndef PROBPLAN_BENCH_HPP_
#define PROBPLAN_BENCH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string_view>

#include "probplan/scenario.hpp"

namespace probplan {

inline constexpr std::string_view kBenchCsvHeader =
    "M,graph_build_ms,solve_ms,peak_memory_bytes,goal_T,goal_P,seed";

struct BenchRow {
  std::size_t M = 0;
  double graph_build_ms = 0.0;  // host index plus every edge's tree solve
  double solve_ms = 0.0;        // path search excluding edge evaluation
  std::uint64_t peak_memory_bytes = 0;
  double goal_T = 0.0;
  double goal_P = 0.0;
  std::uint64_t seed = 0;
};

// Generates an M-host scenario and plans source -> goal with the Dijkstra
// variant, evaluating each host's outgoing edges only when it is settled so
// the full M x M graph is never held in memory.
//
// peak_memory_bytes is the growth of the resident high-water mark over the
// resident size at entry. Where the high-water mark cannot be reset (non
// Linux, or /proc/self/clear_refs not writable) it is the absolute
// high-water mark instead.
BenchRow bench_one(std::size_t hosts, std::uint64_t seed,
                   const GeneratorConfig& config = {}, unsigned jobs = 1);

// bench_one in a forked child process, so rows do not see each other's
// freed-but-resident pages. Falls back to bench_one where fork is missing.
// Throws std::runtime_error if the child fails.
BenchRow bench_isolated(std::size_t hosts, std::uint64_t seed,
                        const GeneratorConfig& config = {}, unsigned jobs = 1);

void write_bench_header(std::ostream& out);
void write_bench_row(std::ostream& out, const BenchRow& row);

// VmRSS / VmHWM of this process in bytes, if the platform reports them.
std::optional<std::uint64_t> resident_bytes();
std::optional<std::uint64_t> peak_resident_bytes();

}  // namespace probplan

#endif  // PROBPLAN_BENCH_HPP_
