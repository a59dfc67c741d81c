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

#include <string>

#include "oracle.hpp"
#include "probplan/generator.hpp"
#include "probplan/scenario.hpp"

using namespace probplan;

namespace {

const char* kTwoHosts = R"({
  "version": 1,
  "operating_systems": {"linux": {"family": "Linux"}},
  "services": ["http"],
  "subnets": [{"name": "lan"}],
  "hosts": [
    {"id": "a", "subnet": "lan", "os": "linux"},
    {"id": "b", "subnet": "lan", "os": "linux", "open_ports": [80],
     "services": [{"name": "http", "port": 80}]}
  ],
  "exploits": [
    {"name": "web", "service": "http", "port": 80,
     "targets": [{"os": "linux", "prob": 0.5, "cost": 3}]}
  ],
  "source": "a",
  "goal": "b"
})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("minimal two-host document") {
  const Scenario s = load_scenario(kTwoHosts);
  CHECK(s.hosts.size() == 2);
  CHECK(s.source == "a");
  CHECK(s.goal == "b");
  CHECK(s.hosts[1].services[0].protocol == Protocol::kTcp);
  const Network net(s);
  CHECK(net.size() == 2);
  CHECK(net.reachable(0, 1));
  CHECK(net.port_open(1, 80));
  CHECK(!net.port_open(0, 80));
  REQUIRE(net.applicable(1).size() == 1);
  CHECK(net.applicable(0).empty());
  CHECK(net.host_index("b") == 1);
  CHECK_THROWS_AS(net.host_index("z"), std::invalid_argument);
}

TEST_CASE("exploit naming an undefined service") {
  const std::string doc = replace(kTwoHosts, R"("service": "http")", R"("service": "ftp")");
  try {
    load_scenario(doc);
    FAIL("expected a semantic error");
  } catch (const SemanticError& e) {
    CHECK(e.path() == "exploits[0].service");
    CHECK(std::string(e.what()).find("'web'") != std::string::npos);
  }
}

TEST_CASE("semantic errors carry a field path") {
  const auto path_of = [](const std::string& doc) {
    try {
      load_scenario(doc);
    } catch (const SemanticError& e) {
      return e.path();
    }
    return std::string("<none>");
  };
  CHECK(path_of(replace(kTwoHosts, "[80]", "[70000]")) == "hosts[1].open_ports[0]");
  CHECK(path_of(replace(kTwoHosts, R"("subnet": "lan", "os": "linux"})",
                        R"("subnet": "wan", "os": "linux"})")) == "hosts[0].subnet");
  CHECK(path_of(replace(kTwoHosts, R"("prob": 0.5)", R"("prob": 1.5)")) ==
        "exploits[0].targets[0].prob");
  CHECK(path_of(replace(kTwoHosts, R"("source": "a")", R"("source": "q")")) == "source");
  CHECK(path_of(replace(kTwoHosts, R"("version": 1)", R"("version": 2)")) == "version");
  CHECK(path_of(replace(kTwoHosts, R"("source": "a",)", "")) == "source");
  CHECK(path_of(replace(kTwoHosts, R"("goal": "b")",
                        R"("goal": "b", "known_facts": [{"kind": "port_open", "host": "a", "port": 80}])")) ==
        "known_facts[0]");
}

TEST_CASE("parse errors carry line and column") {
  try {
    load_scenario("{\n  \"version\": 1,\n  oops\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() >= 3);
  }
}

TEST_CASE("known facts must agree with the network") {
  const std::string doc = replace(
      kTwoHosts, R"("goal": "b")",
      R"("goal": "b", "known_facts": [{"kind": "connectivity", "from": "a", "host": "b"},
                                      {"kind": "port_open", "host": "b", "port": 80},
                                      {"kind": "os", "host": "b"}])");
  const Scenario s = load_scenario(doc);
  const Network net(s);
  CHECK(net.knows_connectivity(0, 1));
  CHECK(!net.knows_connectivity(1, 0));
  CHECK(net.knows_port(1, 80));
  CHECK(net.knows_os(1));
  CHECK(!net.knows_os(0));
}

TEST_CASE("reachability rules") {
  Scenario s = load_scenario(oracle::read_file(oracle::fixture("line3.json")));
  const Network net(s);
  CHECK(net.reachable(0, 1));
  CHECK(!net.reachable(1, 0));
  CHECK(net.reachable(1, 2));
  CHECK(!net.reachable(0, 2));
  CHECK(!net.reachable(0, 0));

  const Scenario g = generate_scenario(11, 7);
  const Network gn(g);
  const std::size_t gw1 = gn.host_index("net1-0");
  const std::size_t h1 = gn.host_index("net1-1");
  const std::size_t gw2 = gn.host_index("net2-0");
  CHECK(gn.reachable(gn.host_index("main-0"), h1));
  CHECK(gn.reachable(h1, gn.host_index("main-0")));
  CHECK(gn.reachable(h1, gw1));
  CHECK(gn.reachable(gw1, gw2));
  CHECK(!gn.reachable(h1, gw2));
}

TEST_CASE("OS descriptors match field by field with empty wildcards") {
  const OsDescriptor xp{"Windows", "WinXp", "Professional", "Sp2", "I386"};
  CHECK(OsDescriptor{"Windows", "", "", "", ""}.matches(xp));
  CHECK(OsDescriptor{"Windows", "WinXp", "", "Sp2", ""}.matches(xp));
  CHECK(!OsDescriptor{"Windows", "Win7", "", "", ""}.matches(xp));
  CHECK(xp.matches(xp));
}

TEST_CASE("generated scenarios round-trip") {
  for (int m : {6, 11, 40}) {
    const Scenario s = generate_scenario(m, 3);
    const std::string text = save_scenario(s);
    const Scenario back = load_scenario(text);
    CHECK(back == s);
    CHECK(save_scenario(back) == text);
  }
  const Scenario doc = load_scenario(oracle::read_file(oracle::fixture("shared.json")));
  CHECK(load_scenario(save_scenario(doc)) == doc);
}

}  // TEST_SUITE
