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

#ifndef PROBPLAN_GENERATOR_HPP_
#define PROBPLAN_GENERATOR_HPP_

#include <cstdint>
#include <string_view>

#include "probplan/scenario.hpp"

namespace probplan {

inline constexpr int kMinGeneratedHosts = 6;
inline constexpr int kGeneratedSubnets = 5;

// Parses a generator config document. Missing keys keep their defaults.
// Throws ParseError or SemanticError.
GeneratorConfig load_generator_config(std::string_view document);

// Synthetic test network: one main subnet holding the attacker's source host
// and five subnets sharing the remaining hosts as evenly as possible. Main
// and every subnet reach each other; subnets reach one another only through
// their gateway (the first host of each subnet). The goal is the last host
// of the last subnet.
//
// The result is a pure function of (hosts, seed, config) and records all
// three. Throws std::invalid_argument for hosts < 6 or an invalid config.
Scenario generate_scenario(int hosts, std::uint64_t seed,
                           const GeneratorConfig& config = {});

}  // namespace probplan

#endif  // PROBPLAN_GENERATOR_HPP_
