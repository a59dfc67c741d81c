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

#include "probplan/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"

namespace probplan {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string child(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string element(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Typed accessors that report the field path on mismatch.
class Reader {
 public:
  Reader(const json& value, std::string path)
      : value_(value), path_(std::move(path)) {
    if (!value_.is_object()) throw SemanticError(path_, "expected an object");
  }

  bool has(std::string_view key) const {
    auto it = value_.find(key);
    return it != value_.end() && !it->is_null();
  }

  const json& raw(std::string_view key) const {
    auto it = value_.find(key);
    if (it == value_.end()) {
      throw SemanticError(child(path_, key), "missing required field");
    }
    return *it;
  }

  std::string string(std::string_view key) const {
    const json& v = raw(key);
    if (!v.is_string()) throw SemanticError(child(path_, key), "expected a string");
    return v.get<std::string>();
  }

  std::string string_or(std::string_view key, std::string fallback) const {
    return has(key) ? string(key) : fallback;
  }

  double number(std::string_view key) const {
    const json& v = raw(key);
    if (!v.is_number()) throw SemanticError(child(path_, key), "expected a number");
    return v.get<double>();
  }

  int integer(std::string_view key) const {
    const json& v = raw(key);
    if (!v.is_number_integer()) {
      throw SemanticError(child(path_, key), "expected an integer");
    }
    return v.get<int>();
  }

  bool boolean_or(std::string_view key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_boolean()) throw SemanticError(child(path_, key), "expected a boolean");
    return v.get<bool>();
  }

  const json& array(std::string_view key) const {
    const json& v = raw(key);
    if (!v.is_array()) throw SemanticError(child(path_, key), "expected an array");
    return v;
  }

  std::vector<std::string> strings_or_empty(std::string_view key) const {
    std::vector<std::string> out;
    if (!has(key)) return out;
    const json& arr = array(key);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_string()) {
        throw SemanticError(element(child(path_, key), i), "expected a string");
      }
      out.push_back(arr[i].get<std::string>());
    }
    return out;
  }

  Reader object(std::string_view key) const {
    return Reader(raw(key), child(path_, key));
  }

  const std::string& path() const { return path_; }

 private:
  const json& value_;
  std::string path_;
};

Protocol parse_protocol(const std::string& text, const std::string& path) {
  if (text == "tcp") return Protocol::kTcp;
  if (text == "udp") return Protocol::kUdp;
  throw SemanticError(path, "unknown protocol '" + text + "'");
}

std::string fact_kind_name(FactKind kind) {
  switch (kind) {
    case FactKind::kConnectivity:
      return "connectivity";
    case FactKind::kPortOpen:
      return "port_open";
    case FactKind::kOs:
      return "os";
  }
  return "os";
}

FactKind parse_fact_kind(const std::string& text, const std::string& path) {
  if (text == "connectivity") return FactKind::kConnectivity;
  if (text == "port_open") return FactKind::kPortOpen;
  if (text == "os") return FactKind::kOs;
  throw SemanticError(path, "unknown fact kind '" + text + "'");
}

OsDescriptor read_os(const Reader& r) {
  OsDescriptor os;
  os.family = r.string_or("family", "");
  os.version = r.string_or("version", "");
  os.edition = r.string_or("edition", "");
  os.servicepack = r.string_or("servicepack", "");
  os.architecture = r.string_or("architecture", "");
  return os;
}

ProbeStats read_probe(const Reader& r) {
  return ProbeStats{r.number("prob"), r.number("cost")};
}

GeneratorConfig read_generator_config(const Reader& r) {
  GeneratorConfig c;
  c.p_min = r.number("p_min");
  c.p_max = r.number("p_max");
  c.t_min = r.number("t_min");
  c.t_max = r.number("t_max");
  c.exploits_per_os = r.integer("exploits_per_os");
  if (r.has("os_weights")) {
    const Reader weights = r.object("os_weights");
    const json& obj = r.raw("os_weights");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      c.os_weights[it.key()] = weights.number(it.key());
    }
  }
  return c;
}

void check_port(int port, const std::string& path) {
  if (port < 1 || port > 65535) {
    throw SemanticError(path, "port " + std::to_string(port) +
                                  " outside [1, 65535]");
  }
}

void check_prob_cost(double prob, double cost, const std::string& path) {
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw SemanticError(child(path, "prob"), "probability outside [0, 1]");
  }
  if (!std::isfinite(cost) || cost < 0.0) {
    throw SemanticError(child(path, "cost"), "cost must be finite and >= 0");
  }
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

ordered_json os_to_json(const OsDescriptor& os) {
  ordered_json j = ordered_json::object();
  if (!os.family.empty()) j["family"] = os.family;
  if (!os.version.empty()) j["version"] = os.version;
  if (!os.edition.empty()) j["edition"] = os.edition;
  if (!os.servicepack.empty()) j["servicepack"] = os.servicepack;
  if (!os.architecture.empty()) j["architecture"] = os.architecture;
  return j;
}

ordered_json probe_to_json(const ProbeStats& p) {
  return ordered_json{{"prob", p.prob}, {"cost", p.cost}};
}

}  // namespace

bool OsDescriptor::matches(const OsDescriptor& host) const {
  const auto field_ok = [](const std::string& want, const std::string& have) {
    return want.empty() || want == have;
  };
  return field_ok(family, host.family) && field_ok(version, host.version) &&
         field_ok(edition, host.edition) &&
         field_ok(servicepack, host.servicepack) &&
         field_ok(architecture, host.architecture);
}

std::string OsDescriptor::to_string() const {
  std::string out;
  for (const std::string* f :
       {&family, &version, &edition, &servicepack, &architecture}) {
    if (f->empty()) continue;
    if (!out.empty()) out += ' ';
    out += *f;
  }
  return out.empty() ? "*" : out;
}

std::string_view protocol_name(Protocol p) {
  return p == Protocol::kTcp ? "tcp" : "udp";
}

ParseError::ParseError(const std::string& message, std::size_t line,
                       std::size_t column)
    : std::runtime_error("parse error at line " + std::to_string(line) +
                         ", column " + std::to_string(column) + ": " +
                         message),
      line_(line),
      column_(column) {}

SemanticError::SemanticError(std::string path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

void validate_scenario(const Scenario& s) {
  if (s.hosts.empty()) throw SemanticError("hosts", "scenario has no hosts");

  for (const auto& [key, os] : s.operating_systems) {
    if (key.empty()) throw SemanticError("operating_systems", "empty OS key");
  }

  std::set<std::string> services;
  for (std::size_t i = 0; i < s.services.size(); ++i) {
    if (s.services[i].empty()) {
      throw SemanticError(element("services", i), "empty service name");
    }
    if (!services.insert(s.services[i]).second) {
      throw SemanticError(element("services", i),
                          "duplicate service '" + s.services[i] + "'");
    }
  }

  std::set<std::string> subnets;
  for (std::size_t i = 0; i < s.subnets.size(); ++i) {
    if (!subnets.insert(s.subnets[i].name).second) {
      throw SemanticError(element("subnets", i),
                          "duplicate subnet '" + s.subnets[i].name + "'");
    }
  }
  for (std::size_t i = 0; i < s.subnets.size(); ++i) {
    const std::string base = element("subnets", i);
    for (std::size_t k = 0; k < s.subnets[i].reaches.size(); ++k) {
      if (!subnets.count(s.subnets[i].reaches[k])) {
        throw SemanticError(element(child(base, "reaches"), k),
                            "unknown subnet '" + s.subnets[i].reaches[k] + "'");
      }
    }
    for (std::size_t k = 0; k < s.subnets[i].gateway_reaches.size(); ++k) {
      if (!subnets.count(s.subnets[i].gateway_reaches[k])) {
        throw SemanticError(
            element(child(base, "gateway_reaches"), k),
            "unknown subnet '" + s.subnets[i].gateway_reaches[k] + "'");
      }
    }
  }

  std::map<std::string, std::size_t> hosts;
  for (std::size_t i = 0; i < s.hosts.size(); ++i) {
    const Host& h = s.hosts[i];
    const std::string base = element("hosts", i);
    if (h.id.empty()) throw SemanticError(child(base, "id"), "empty host id");
    if (!hosts.emplace(h.id, i).second) {
      throw SemanticError(child(base, "id"), "duplicate host '" + h.id + "'");
    }
    if (!subnets.count(h.subnet)) {
      throw SemanticError(child(base, "subnet"),
                          "unknown subnet '" + h.subnet + "'");
    }
    if (!s.operating_systems.count(h.os)) {
      throw SemanticError(child(base, "os"), "unknown OS '" + h.os + "'");
    }
    for (std::size_t k = 0; k < h.open_ports.size(); ++k) {
      check_port(h.open_ports[k], element(child(base, "open_ports"), k));
    }
    for (std::size_t k = 0; k < h.services.size(); ++k) {
      const std::string sp = element(child(base, "services"), k);
      if (!services.count(h.services[k].name)) {
        throw SemanticError(child(sp, "name"), "unknown service '" +
                                                   h.services[k].name + "'");
      }
      check_port(h.services[k].port, child(sp, "port"));
    }
  }

  std::set<std::string> exploit_names;
  for (std::size_t i = 0; i < s.exploits.size(); ++i) {
    const ExploitTemplate& e = s.exploits[i];
    const std::string base = element("exploits", i);
    if (e.name.empty()) throw SemanticError(child(base, "name"), "empty name");
    if (!exploit_names.insert(e.name).second) {
      throw SemanticError(child(base, "name"),
                          "duplicate exploit '" + e.name + "'");
    }
    if (!services.count(e.service)) {
      throw SemanticError(child(base, "service"),
                          "exploit '" + e.name + "' references unknown service '" +
                              e.service + "'");
    }
    check_port(e.port, child(base, "port"));
    if (e.targets.empty()) {
      throw SemanticError(child(base, "targets"),
                          "exploit '" + e.name + "' lists no target OS");
    }
    for (std::size_t k = 0; k < e.targets.size(); ++k) {
      const std::string tp = element(child(base, "targets"), k);
      if (!s.operating_systems.count(e.targets[k].os)) {
        throw SemanticError(child(tp, "os"),
                            "exploit '" + e.name + "' references unknown OS '" +
                                e.targets[k].os + "'");
      }
      check_prob_cost(e.targets[k].prob, e.targets[k].cost, tp);
    }
  }

  check_prob_cost(s.probes.host_probe.prob, s.probes.host_probe.cost,
                  "probes.host_probe");
  check_prob_cost(s.probes.port_probe.prob, s.probes.port_probe.cost,
                  "probes.port_probe");
  check_prob_cost(s.probes.os_detect.prob, s.probes.os_detect.cost,
                  "probes.os_detect");

  if (!hosts.count(s.source)) {
    throw SemanticError("source", "unknown host '" + s.source + "'");
  }
  if (s.goal && !hosts.count(*s.goal)) {
    throw SemanticError("goal", "unknown host '" + *s.goal + "'");
  }

  // Known facts must be consistent with the ground truth they describe.
  const Network net(s);
  for (std::size_t i = 0; i < s.known_facts.size(); ++i) {
    const KnownFact& f = s.known_facts[i];
    const std::string base = element("known_facts", i);
    if (!hosts.count(f.host)) {
      throw SemanticError(child(base, "host"), "unknown host '" + f.host + "'");
    }
    const std::size_t h = hosts.at(f.host);
    switch (f.kind) {
      case FactKind::kConnectivity: {
        if (!hosts.count(f.from)) {
          throw SemanticError(child(base, "from"),
                              "unknown host '" + f.from + "'");
        }
        const std::size_t from = hosts.at(f.from);
        if (from == h || !net.reachable(from, h)) {
          throw SemanticError(base, "connectivity " + f.from + " -> " + f.host +
                                        " contradicts the topology");
        }
        break;
      }
      case FactKind::kPortOpen:
        check_port(f.port, child(base, "port"));
        if (!net.port_open(h, f.port)) {
          throw SemanticError(base, "port " + std::to_string(f.port) +
                                        " is not open on " + f.host);
        }
        break;
      case FactKind::kOs:
        break;
    }
  }

  if (s.generator) {
    const GeneratorConfig& c = s.generator->config;
    if (!(c.p_min >= 0.0 && c.p_min <= c.p_max && c.p_max <= 1.0)) {
      throw SemanticError("generator.config", "need 0 <= p_min <= p_max <= 1");
    }
    if (!(c.t_min >= 0.0 && c.t_min <= c.t_max && std::isfinite(c.t_max))) {
      throw SemanticError("generator.config", "need 0 <= t_min <= t_max");
    }
  }
}

Scenario load_scenario(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(document, e.byte);
    throw ParseError(e.what(), line, column);
  }

  const Reader root(doc, "");
  if (root.integer("version") != kScenarioFormatVersion) {
    throw SemanticError("version", "unsupported scenario version");
  }
  if (root.has("probplan_scenario") &&
      root.integer("probplan_scenario") != kScenarioFormatVersion) {
    throw SemanticError("probplan_scenario", "unsupported format marker");
  }

  Scenario s;
  {
    const Reader oses = root.object("operating_systems");
    const json& obj = root.raw("operating_systems");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      s.operating_systems[it.key()] = read_os(oses.object(it.key()));
    }
  }
  s.services = root.strings_or_empty("services");

  const json& subnets = root.array("subnets");
  for (std::size_t i = 0; i < subnets.size(); ++i) {
    const Reader r(subnets[i], element("subnets", i));
    s.subnets.push_back(Subnet{r.string("name"), r.strings_or_empty("reaches"),
                               r.strings_or_empty("gateway_reaches")});
  }

  const json& hosts = root.array("hosts");
  for (std::size_t i = 0; i < hosts.size(); ++i) {
    const Reader r(hosts[i], element("hosts", i));
    Host h;
    h.id = r.string("id");
    h.subnet = r.string("subnet");
    h.os = r.string("os");
    h.gateway = r.boolean_or("gateway", false);
    if (r.has("open_ports")) {
      const json& ports = r.array("open_ports");
      for (std::size_t k = 0; k < ports.size(); ++k) {
        const std::string pp = element(child(r.path(), "open_ports"), k);
        if (!ports[k].is_number_integer()) throw SemanticError(pp, "expected an integer");
        h.open_ports.push_back(ports[k].get<int>());
      }
    }
    if (r.has("services")) {
      const json& svcs = r.array("services");
      for (std::size_t k = 0; k < svcs.size(); ++k) {
        const Reader sr(svcs[k], element(child(r.path(), "services"), k));
        h.services.push_back(HostService{
            sr.string("name"), sr.integer("port"),
            parse_protocol(sr.string_or("protocol", "tcp"),
                           child(sr.path(), "protocol"))});
      }
    }
    s.hosts.push_back(std::move(h));
  }

  const json& exploits = root.array("exploits");
  for (std::size_t i = 0; i < exploits.size(); ++i) {
    const Reader r(exploits[i], element("exploits", i));
    ExploitTemplate e;
    e.name = r.string("name");
    e.service = r.string("service");
    e.port = r.integer("port");
    e.protocol =
        parse_protocol(r.string_or("protocol", "tcp"), child(r.path(), "protocol"));
    const json& targets = r.array("targets");
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const Reader tr(targets[k], element(child(r.path(), "targets"), k));
      e.targets.push_back(
          ExploitTarget{tr.string("os"), tr.number("prob"), tr.number("cost")});
    }
    s.exploits.push_back(std::move(e));
  }

  if (root.has("probes")) {
    const Reader p = root.object("probes");
    if (p.has("host_probe")) s.probes.host_probe = read_probe(p.object("host_probe"));
    if (p.has("port_probe")) s.probes.port_probe = read_probe(p.object("port_probe"));
    if (p.has("os_detect")) s.probes.os_detect = read_probe(p.object("os_detect"));
  }

  s.source = root.string("source");
  if (root.has("goal")) s.goal = root.string("goal");

  if (root.has("known_facts")) {
    const json& facts = root.array("known_facts");
    for (std::size_t i = 0; i < facts.size(); ++i) {
      const Reader r(facts[i], element("known_facts", i));
      KnownFact f;
      f.kind = parse_fact_kind(r.string("kind"), child(r.path(), "kind"));
      f.host = r.string("host");
      if (f.kind == FactKind::kConnectivity) f.from = r.string("from");
      if (f.kind == FactKind::kPortOpen) f.port = r.integer("port");
      s.known_facts.push_back(std::move(f));
    }
  }

  if (root.has("generator")) {
    const Reader g = root.object("generator");
    GeneratorRecord rec;
    rec.hosts = g.integer("hosts");
    const json& seed = g.raw("seed");
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
      throw SemanticError("generator.seed", "expected an integer");
    }
    rec.seed = seed.get<std::uint64_t>();
    rec.config = read_generator_config(g.object("config"));
    s.generator = rec;
  }

  validate_scenario(s);
  return s;
}

std::string save_scenario(const Scenario& s) {
  ordered_json doc;
  doc["probplan_scenario"] = kScenarioFormatVersion;
  doc["version"] = kScenarioFormatVersion;

  ordered_json oses = ordered_json::object();
  for (const auto& [key, os] : s.operating_systems) oses[key] = os_to_json(os);
  doc["operating_systems"] = std::move(oses);
  doc["services"] = s.services;

  ordered_json subnets = ordered_json::array();
  for (const Subnet& n : s.subnets) {
    ordered_json j{{"name", n.name}, {"reaches", n.reaches}};
    if (!n.gateway_reaches.empty()) j["gateway_reaches"] = n.gateway_reaches;
    subnets.push_back(std::move(j));
  }
  doc["subnets"] = std::move(subnets);

  ordered_json hosts = ordered_json::array();
  for (const Host& h : s.hosts) {
    ordered_json services = ordered_json::array();
    for (const HostService& svc : h.services) {
      services.push_back({{"name", svc.name},
                          {"port", svc.port},
                          {"protocol", protocol_name(svc.protocol)}});
    }
    ordered_json j{{"id", h.id},
                   {"subnet", h.subnet},
                   {"os", h.os},
                   {"open_ports", h.open_ports},
                   {"services", std::move(services)}};
    if (h.gateway) j["gateway"] = true;
    hosts.push_back(std::move(j));
  }
  doc["hosts"] = std::move(hosts);

  ordered_json exploits = ordered_json::array();
  for (const ExploitTemplate& e : s.exploits) {
    ordered_json targets = ordered_json::array();
    for (const ExploitTarget& t : e.targets) {
      targets.push_back({{"os", t.os}, {"prob", t.prob}, {"cost", t.cost}});
    }
    exploits.push_back({{"name", e.name},
                        {"service", e.service},
                        {"port", e.port},
                        {"protocol", protocol_name(e.protocol)},
                        {"targets", std::move(targets)}});
  }
  doc["exploits"] = std::move(exploits);

  doc["probes"] = {{"host_probe", probe_to_json(s.probes.host_probe)},
                   {"port_probe", probe_to_json(s.probes.port_probe)},
                   {"os_detect", probe_to_json(s.probes.os_detect)}};
  doc["source"] = s.source;
  doc["goal"] = s.goal ? ordered_json(*s.goal) : ordered_json(nullptr);

  ordered_json facts = ordered_json::array();
  for (const KnownFact& f : s.known_facts) {
    ordered_json j{{"kind", fact_kind_name(f.kind)}, {"host", f.host}};
    if (f.kind == FactKind::kConnectivity) j["from"] = f.from;
    if (f.kind == FactKind::kPortOpen) j["port"] = f.port;
    facts.push_back(std::move(j));
  }
  doc["known_facts"] = std::move(facts);

  if (s.generator) {
    const GeneratorConfig& c = s.generator->config;
    ordered_json weights = ordered_json::object();
    for (const auto& [k, w] : c.os_weights) weights[k] = w;
    doc["generator"] = {{"hosts", s.generator->hosts},
                        {"seed", s.generator->seed},
                        {"config",
                         {{"p_min", c.p_min},
                          {"p_max", c.p_max},
                          {"t_min", c.t_min},
                          {"t_max", c.t_max},
                          {"os_weights", std::move(weights)},
                          {"exploits_per_os", c.exploits_per_os}}}};
  }
  return doc.dump(2) + "\n";
}

Network::Network(const Scenario& scenario) : scenario_(&scenario) {
  const auto& hosts = scenario.hosts;
  std::unordered_map<std::string, std::size_t> subnet_index;
  for (std::size_t i = 0; i < scenario.subnets.size(); ++i) {
    subnet_index.emplace(scenario.subnets[i].name, i);
  }
  const std::size_t n_subnets = scenario.subnets.size();
  subnet_reach_.assign(n_subnets, std::vector<char>(n_subnets, 0));
  gateway_reach_.assign(n_subnets, std::vector<char>(n_subnets, 0));
  for (std::size_t i = 0; i < n_subnets; ++i) {
    subnet_reach_[i][i] = 1;
    for (const std::string& r : scenario.subnets[i].reaches) {
      auto it = subnet_index.find(r);
      if (it != subnet_index.end()) subnet_reach_[i][it->second] = 1;
    }
    for (const std::string& r : scenario.subnets[i].gateway_reaches) {
      auto it = subnet_index.find(r);
      if (it != subnet_index.end()) gateway_reach_[i][it->second] = 1;
    }
  }

  subnet_of_.resize(hosts.size(), 0);
  host_by_id_.reserve(hosts.size());
  for (std::size_t i = 0; i < hosts.size(); ++i) {
    host_by_id_.emplace(hosts[i].id, i);
    auto it = subnet_index.find(hosts[i].subnet);
    subnet_of_[i] = it == subnet_index.end() ? 0 : it->second;
  }

  // OS match results are shared by all hosts running the same OS key.
  std::map<std::string, std::vector<ApplicableExploit>> by_os;
  for (const auto& [key, descriptor] : scenario.operating_systems) {
    auto& list = by_os[key];
    for (std::size_t e = 0; e < scenario.exploits.size(); ++e) {
      const auto& targets = scenario.exploits[e].targets;
      for (std::size_t t = 0; t < targets.size(); ++t) {
        auto os_it = scenario.operating_systems.find(targets[t].os);
        if (os_it != scenario.operating_systems.end() &&
            os_it->second.matches(descriptor)) {
          list.push_back({e, t});
          break;
        }
      }
    }
  }
  applicable_.resize(hosts.size());
  for (std::size_t i = 0; i < hosts.size(); ++i) {
    auto it = by_os.find(hosts[i].os);
    if (it == by_os.end()) continue;
    for (const ApplicableExploit& a : it->second) {
      const std::string& service = scenario.exploits[a.exploit].service;
      const bool runs = std::any_of(
          hosts[i].services.begin(), hosts[i].services.end(),
          [&](const HostService& s) { return s.name == service; });
      if (runs) applicable_[i].push_back(a);
    }
  }

  known_connectivity_.resize(hosts.size());
  known_ports_.resize(hosts.size());
  known_os_.assign(hosts.size(), 0);
  for (const KnownFact& f : scenario.known_facts) {
    auto h = find_host(f.host);
    if (!h) continue;
    switch (f.kind) {
      case FactKind::kConnectivity:
        if (auto from = find_host(f.from)) known_connectivity_[*from].push_back(*h);
        break;
      case FactKind::kPortOpen:
        known_ports_[*h].push_back(f.port);
        break;
      case FactKind::kOs:
        known_os_[*h] = 1;
        break;
    }
  }
  for (auto& v : known_connectivity_) std::sort(v.begin(), v.end());
  for (auto& v : known_ports_) std::sort(v.begin(), v.end());
}

std::optional<std::size_t> Network::find_host(std::string_view id) const {
  auto it = host_by_id_.find(std::string(id));
  if (it == host_by_id_.end()) return std::nullopt;
  return it->second;
}

std::size_t Network::host_index(std::string_view id) const {
  auto h = find_host(id);
  if (!h) throw std::invalid_argument("unknown host '" + std::string(id) + "'");
  return *h;
}

bool Network::reachable(std::size_t from, std::size_t to) const {
  if (from == to) return false;
  const std::size_t a = subnet_of_[from];
  const std::size_t b = subnet_of_[to];
  if (subnet_reach_[a][b]) return true;
  return scenario_->hosts[from].gateway && gateway_reach_[a][b];
}

bool Network::port_open(std::size_t host, int port) const {
  const auto& ports = scenario_->hosts[host].open_ports;
  return std::find(ports.begin(), ports.end(), port) != ports.end();
}

bool Network::knows_connectivity(std::size_t from, std::size_t to) const {
  return std::binary_search(known_connectivity_[from].begin(),
                            known_connectivity_[from].end(), to);
}

bool Network::knows_port(std::size_t host, int port) const {
  return std::binary_search(known_ports_[host].begin(),
                            known_ports_[host].end(), port);
}

bool Network::knows_os(std::size_t host) const { return known_os_[host] != 0; }

}  // namespace probplan
