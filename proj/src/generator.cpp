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

#include "probplan/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace probplan {
namespace {

struct CatalogOs {
  const char* key;
  OsDescriptor descriptor;
};

const std::vector<CatalogOs>& os_catalog() {
  static const std::vector<CatalogOs> catalog = {
      {"aix-5.3", {"AIX", "5.3", "Standard", "TL06", "Power"}},
      {"solaris-10", {"Solaris", "10", "Standard", "U8", "Sparc"}},
      {"ubuntu-10.04", {"Linux", "Ubuntu10.04", "Server", "None", "X86_64"}},
      {"win2003-sp1", {"Windows", "Win2003", "Standard", "Sp1", "I386"}},
      {"win7-sp1", {"Windows", "Win7", "Professional", "Sp1", "X86_64"}},
      {"winxp-pro-sp2", {"Windows", "WinXp", "Professional", "Sp2", "I386"}},
  };
  return catalog;
}

struct CatalogService {
  const char* name;
  int port;
  Protocol protocol;
};

const std::vector<CatalogService>& service_catalog() {
  static const std::vector<CatalogService> catalog = {
      {"ftp", 21, Protocol::kTcp},          {"ssh", 22, Protocol::kTcp},
      {"smtp", 25, Protocol::kTcp},         {"http", 80, Protocol::kTcp},
      {"msrpc", 135, Protocol::kTcp},       {"netbios-ns", 137, Protocol::kUdp},
      {"snmp", 161, Protocol::kUdp},        {"https", 443, Protocol::kTcp},
      {"microsoft-ds", 445, Protocol::kTcp}, {"ms-sql-s", 1433, Protocol::kTcp},
      {"mil-2045-47001", 1581, Protocol::kTcp}, {"mysql", 3306, Protocol::kTcp},
  };
  return catalog;
}

// Fixed-formula draws so output does not depend on the standard library's
// distribution implementations.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool chance(double p) { return unit() < p; }

  std::size_t weighted(const std::vector<double>& weights, double total) {
    double x = unit() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (x < weights[i]) return i;
      x -= weights[i];
    }
    return weights.size() - 1;
  }

 private:
  std::mt19937_64 engine_;
};

void check_config(const GeneratorConfig& c) {
  if (!(c.p_min >= 0.0 && c.p_min <= c.p_max && c.p_max <= 1.0)) {
    throw std::invalid_argument("generator config needs 0 <= p_min <= p_max <= 1");
  }
  if (!(c.t_min >= 0.0 && c.t_min <= c.t_max && std::isfinite(c.t_max))) {
    throw std::invalid_argument("generator config needs 0 <= t_min <= t_max");
  }
  if (c.exploits_per_os < 1) {
    throw std::invalid_argument("generator config needs exploits_per_os >= 1");
  }
  double total = 0.0;
  for (const auto& [key, w] : c.os_weights) {
    const auto& cat = os_catalog();
    const bool known = std::any_of(cat.begin(), cat.end(), [&](const CatalogOs& o) {
      return key == o.key;
    });
    if (!known) throw std::invalid_argument("unknown OS '" + key + "' in os_weights");
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("OS weights must be finite and >= 0");
    }
    total += w;
  }
  if (!c.os_weights.empty() && total <= 0.0) {
    throw std::invalid_argument("OS weights sum to zero");
  }
}

}  // namespace

GeneratorConfig load_generator_config(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document.begin(), document.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < document.size(); ++i) {
      if (document[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(e.what(), line, column);
  }
  if (!doc.is_object()) throw SemanticError("", "expected an object");

  GeneratorConfig c;
  const auto number = [&](const char* key, double& out) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_number()) throw SemanticError(key, "expected a number");
    out = doc[key].get<double>();
  };
  number("p_min", c.p_min);
  number("p_max", c.p_max);
  number("t_min", c.t_min);
  number("t_max", c.t_max);
  if (doc.contains("exploits_per_os")) {
    if (!doc["exploits_per_os"].is_number_integer()) {
      throw SemanticError("exploits_per_os", "expected an integer");
    }
    c.exploits_per_os = doc["exploits_per_os"].get<int>();
  }
  if (doc.contains("os_weights")) {
    const auto& w = doc["os_weights"];
    if (!w.is_object()) throw SemanticError("os_weights", "expected an object");
    for (auto it = w.begin(); it != w.end(); ++it) {
      if (!it->is_number()) {
        throw SemanticError("os_weights." + it.key(), "expected a number");
      }
      c.os_weights[it.key()] = it->get<double>();
    }
  }
  try {
    check_config(c);
  } catch (const std::invalid_argument& e) {
    throw SemanticError("config", e.what());
  }
  return c;
}

Scenario generate_scenario(int hosts, std::uint64_t seed,
                           const GeneratorConfig& config) {
  if (hosts < kMinGeneratedHosts) {
    throw std::invalid_argument("generated scenarios need at least 6 hosts");
  }
  check_config(config);
  Draw draw(seed);

  Scenario s;
  s.generator = GeneratorRecord{hosts, seed, config};

  // Operating systems in play and their sampling weights.
  std::vector<std::string> os_keys;
  std::vector<double> os_weights;
  for (const CatalogOs& o : os_catalog()) {
    if (!config.os_weights.empty()) {
      auto it = config.os_weights.find(o.key);
      if (it == config.os_weights.end() || it->second <= 0.0) continue;
      os_weights.push_back(it->second);
    } else {
      os_weights.push_back(1.0);
    }
    os_keys.push_back(o.key);
    s.operating_systems[o.key] = o.descriptor;
  }
  double weight_total = 0.0;
  for (double w : os_weights) weight_total += w;

  const auto& services = service_catalog();
  for (const CatalogService& svc : services) s.services.push_back(svc.name);

  // Exploit catalog: half as many exploits as (OS, slot) pairs, so some
  // exploits work against several operating systems.
  const std::size_t per_os = static_cast<std::size_t>(config.exploits_per_os);
  const std::size_t n_exploits = std::max<std::size_t>(1, os_keys.size() * per_os / 2);
  std::vector<ExploitTemplate> exploits(n_exploits);
  for (std::size_t e = 0; e < n_exploits; ++e) {
    const CatalogService& svc = services[draw.index(services.size())];
    exploits[e].name = "exploit-" + std::to_string(e);
    exploits[e].service = svc.name;
    exploits[e].port = svc.port;
    exploits[e].protocol = svc.protocol;
  }
  for (const std::string& os : os_keys) {
    std::vector<std::size_t> pool(n_exploits);
    for (std::size_t i = 0; i < n_exploits; ++i) pool[i] = i;
    const std::size_t take = std::min(per_os, n_exploits);
    for (std::size_t k = 0; k < take; ++k) {
      const std::size_t pick = k + draw.index(pool.size() - k);
      std::swap(pool[k], pool[pick]);
      const double prob = draw.uniform(config.p_min, config.p_max);
      const double cost = draw.uniform(config.t_min, config.t_max);
      exploits[pool[k]].targets.push_back(ExploitTarget{os, prob, cost});
    }
  }
  for (ExploitTemplate& e : exploits) {
    if (!e.targets.empty()) s.exploits.push_back(std::move(e));
  }

  // Topology.
  std::vector<std::string> subnet_names;
  for (int k = 1; k <= kGeneratedSubnets; ++k) {
    subnet_names.push_back("net" + std::to_string(k));
  }
  s.subnets.push_back(Subnet{"main", subnet_names, {}});
  for (const std::string& name : subnet_names) {
    std::vector<std::string> others;
    for (const std::string& o : subnet_names) {
      if (o != name) others.push_back(o);
    }
    s.subnets.push_back(Subnet{name, {"main"}, std::move(others)});
  }

  const auto make_host = [&](std::string id, std::string subnet, bool gateway) {
    Host h;
    h.id = std::move(id);
    h.subnet = std::move(subnet);
    h.gateway = gateway;
    h.os = os_keys[draw.weighted(os_weights, weight_total)];

    // One exploitable service is guaranteed; the rest are incidental.
    std::vector<std::size_t> usable;
    for (std::size_t e = 0; e < s.exploits.size(); ++e) {
      for (const ExploitTarget& t : s.exploits[e].targets) {
        if (t.os == h.os) {
          usable.push_back(e);
          break;
        }
      }
    }
    std::string guaranteed;
    if (!usable.empty()) guaranteed = s.exploits[usable[draw.index(usable.size())]].service;
    for (const CatalogService& svc : services) {
      const bool runs = svc.name == guaranteed || draw.chance(0.3);
      if (!runs) continue;
      h.services.push_back(HostService{svc.name, svc.port, svc.protocol});
      if (svc.name == guaranteed || draw.chance(0.9)) h.open_ports.push_back(svc.port);
    }
    return h;
  };

  s.hosts.push_back(make_host("main-0", "main", false));
  const int rest = hosts - 1;
  for (int k = 0; k < kGeneratedSubnets; ++k) {
    const int count = rest / kGeneratedSubnets + (k < rest % kGeneratedSubnets ? 1 : 0);
    for (int i = 0; i < count; ++i) {
      s.hosts.push_back(make_host(subnet_names[k] + "-" + std::to_string(i),
                                  subnet_names[k], i == 0));
    }
  }
  s.source = s.hosts.front().id;
  s.goal = s.hosts.back().id;
  return s;
}

}  // namespace probplan
