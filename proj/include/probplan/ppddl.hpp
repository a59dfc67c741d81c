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

#ifndef PROBPLAN_PPDDL_HPP_
#define PROBPLAN_PPDDL_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "probplan/scenario.hpp"

namespace probplan {

// Reader for the PPDDL subset used to describe exploit catalogs:
//
//   (define (domain NAME) (:action ...)*)   or a bare list of (:action ...)
//   (:action NAME :parameters (?v [- host] ...)
//                 :precondition (and ATOM...) :effect (and EFFECT...))
//
// Precondition atoms: compromised, has_OS, has_OS_version, has_OS_edition,
// has_OS_servicepack, has_architecture, has_service, TCP_connectivity,
// UDP_connectivity. Effects: installed_agent (exploits), connected (host
// probes), TCP_connectivity / UDP_connectivity (port probes), os_known (OS
// detection), (increase (time) k), and (probabilistic p EFFECT) with a
// single outcome. Nested `and` is flattened. Anything else is an error.

enum class ProbeKind { kHostProbe, kPortProbe, kOsDetect };

struct PpddlExploit {
  std::string name;
  OsDescriptor os;
  std::string service;
  int port = 0;
  Protocol protocol = Protocol::kTcp;
  std::string privilege;
  bool requires_compromised_source = false;
  double prob = 1.0;
  double cost = 0.0;

  friend bool operator==(const PpddlExploit&, const PpddlExploit&) = default;
};

struct PpddlProbe {
  std::string name;
  ProbeKind kind = ProbeKind::kHostProbe;
  double prob = 1.0;
  double cost = 0.0;

  friend bool operator==(const PpddlProbe&, const PpddlProbe&) = default;
};

struct DomainFragment {
  std::string name;
  std::vector<PpddlExploit> exploits;
  std::vector<PpddlProbe> probes;

  friend bool operator==(const DomainFragment&, const DomainFragment&) = default;
};

class PpddlError : public std::runtime_error {
 public:
  PpddlError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

DomainFragment parse_ppddl(std::string_view text);

// Canonical text for a fragment; parse_ppddl(write_ppddl(f)) == f.
std::string write_ppddl(const DomainFragment& fragment);

// Adds the fragment's exploits to the scenario catalog (registering any new
// OS descriptor or service) and lets its probes override the probe table.
// An exploit already in the catalog gains the fragment's OS as a target.
void merge_fragment(Scenario& scenario, const DomainFragment& fragment);

}  // namespace probplan

#endif  // PROBPLAN_PPDDL_HPP_
