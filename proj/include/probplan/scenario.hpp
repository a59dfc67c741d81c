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

#ifndef PROBPLAN_SCENARIO_HPP_
#define PROBPLAN_SCENARIO_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace probplan {

// Operating system facts as reported by OS detection. In an exploit target
// an empty field is a wildcard.
struct OsDescriptor {
  std::string family;
  std::string version;
  std::string edition;
  std::string servicepack;
  std::string architecture;

  // True if every nonempty field of *this equals the same field of `host`.
  bool matches(const OsDescriptor& host) const;
  std::string to_string() const;

  friend bool operator==(const OsDescriptor&, const OsDescriptor&) = default;
};

enum class Protocol { kTcp, kUdp };

std::string_view protocol_name(Protocol p);

struct HostService {
  std::string name;
  int port = 0;
  Protocol protocol = Protocol::kTcp;

  friend bool operator==(const HostService&, const HostService&) = default;
};

struct Host {
  std::string id;
  std::string subnet;
  std::string os;  // key into Scenario::operating_systems
  std::vector<int> open_ports;
  std::vector<HostService> services;
  bool gateway = false;

  friend bool operator==(const Host&, const Host&) = default;
};

// Hosts of a subnet always reach each other. They also reach every host of
// the subnets in `reaches`; gateway hosts additionally reach the subnets in
// `gateway_reaches`.
struct Subnet {
  std::string name;
  std::vector<std::string> reaches;
  std::vector<std::string> gateway_reaches;

  friend bool operator==(const Subnet&, const Subnet&) = default;
};

// Success statistics of an exploit against one OS.
struct ExploitTarget {
  std::string os;  // key into Scenario::operating_systems
  double prob = 0.0;
  double cost = 0.0;

  friend bool operator==(const ExploitTarget&, const ExploitTarget&) = default;
};

struct ExploitTemplate {
  std::string name;
  std::string service;
  int port = 0;
  Protocol protocol = Protocol::kTcp;
  std::vector<ExploitTarget> targets;  // any-of

  friend bool operator==(const ExploitTemplate&,
                         const ExploitTemplate&) = default;
};

struct ProbeStats {
  double prob = 1.0;
  double cost = 1.0;

  friend bool operator==(const ProbeStats&, const ProbeStats&) = default;
};

// Statistics of the information-gathering actions that establish exploit
// requirements.
struct ProbeCatalog {
  ProbeStats host_probe{1.0, 1.0};
  ProbeStats port_probe{1.0, 1.0};
  ProbeStats os_detect{1.0, 2.0};

  friend bool operator==(const ProbeCatalog&, const ProbeCatalog&) = default;
};

enum class FactKind { kConnectivity, kPortOpen, kOs };

// An asset the attacker already holds before planning starts.
struct KnownFact {
  FactKind kind = FactKind::kOs;
  std::string host;
  std::string from;  // kConnectivity only
  int port = 0;      // kPortOpen only

  friend bool operator==(const KnownFact&, const KnownFact&) = default;
};

struct GeneratorConfig {
  double p_min = 0.3;
  double p_max = 0.95;
  double t_min = 1.0;
  double t_max = 60.0;
  // OS key -> relative sampling weight. Empty means the built-in catalog
  // with uniform weights.
  std::map<std::string, double> os_weights;
  int exploits_per_os = 4;

  friend bool operator==(const GeneratorConfig&,
                         const GeneratorConfig&) = default;
};

// Parameters a generated scenario was produced from.
struct GeneratorRecord {
  int hosts = 0;
  std::uint64_t seed = 0;
  GeneratorConfig config;

  friend bool operator==(const GeneratorRecord&,
                         const GeneratorRecord&) = default;
};

struct Scenario {
  std::map<std::string, OsDescriptor> operating_systems;
  std::vector<std::string> services;
  std::vector<Subnet> subnets;
  std::vector<Host> hosts;
  std::vector<ExploitTemplate> exploits;
  ProbeCatalog probes;
  std::string source;
  std::optional<std::string> goal;
  std::vector<KnownFact> known_facts;
  std::optional<GeneratorRecord> generator;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

inline constexpr int kScenarioFormatVersion = 1;

// Malformed JSON. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Well-formed document that violates the schema or referential integrity.
// `path` locates the offending field, e.g. "hosts[3].open_ports[0]".
class SemanticError : public std::runtime_error {
 public:
  SemanticError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

Scenario load_scenario(std::string_view document);
std::string save_scenario(const Scenario& scenario);

// Runs every semantic check load_scenario applies. Throws SemanticError.
void validate_scenario(const Scenario& scenario);

// An applicable (exploit, OS entry) pair for one target host.
struct ApplicableExploit {
  std::size_t exploit = 0;  // index into Scenario::exploits
  std::size_t target = 0;   // index into ExploitTemplate::targets
};

// Index over a validated scenario answering the questions the planners ask
// per host pair. Holds a reference: the scenario must outlive it.
class Network {
 public:
  explicit Network(const Scenario& scenario);

  const Scenario& scenario() const { return *scenario_; }
  std::size_t size() const { return scenario_->hosts.size(); }
  const Host& host(std::size_t i) const { return scenario_->hosts[i]; }
  std::optional<std::size_t> find_host(std::string_view id) const;
  std::size_t host_index(std::string_view id) const;  // throws if unknown

  // Network-level reachability from host i to host j (i != j).
  bool reachable(std::size_t from, std::size_t to) const;
  bool port_open(std::size_t host, int port) const;

  // Exploits whose service runs on `host` and that list a target matching
  // its OS. When several targets match, the first one listed is used.
  const std::vector<ApplicableExploit>& applicable(std::size_t host) const {
    return applicable_[host];
  }

  bool knows_connectivity(std::size_t from, std::size_t to) const;
  bool knows_port(std::size_t host, int port) const;
  bool knows_os(std::size_t host) const;

 private:
  const Scenario* scenario_;
  std::unordered_map<std::string, std::size_t> host_by_id_;
  std::vector<std::size_t> subnet_of_;
  std::vector<std::vector<char>> subnet_reach_;
  std::vector<std::vector<char>> gateway_reach_;
  std::vector<std::vector<ApplicableExploit>> applicable_;
  std::vector<std::vector<std::size_t>> known_connectivity_;  // sorted
  std::vector<std::vector<int>> known_ports_;                 // sorted
  std::vector<char> known_os_;
};

}  // namespace probplan

#endif  // PROBPLAN_SCENARIO_HPP_
