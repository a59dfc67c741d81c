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

#include "probplan/ppddl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

namespace probplan {
namespace {

struct Sexp {
  bool is_list = false;
  std::string atom;
  std::vector<Sexp> items;
  std::size_t line = 1;
  std::size_t column = 1;
};

[[noreturn]] void fail(const Sexp& at, const std::string& message) {
  throw PpddlError(message, at.line, at.column);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<Sexp> read_all() {
    std::vector<Sexp> out;
    skip_space();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skip_space();
    }
    return out;
  }

 private:
  Sexp read() {
    skip_space();
    Sexp node;
    node.line = line_;
    node.column = column_;
    if (pos_ >= text_.size()) {
      throw PpddlError("unexpected end of input", line_, column_);
    }
    const char c = text_[pos_];
    if (c == ')') throw PpddlError("unbalanced ')'", line_, column_);
    if (c == '(') {
      node.is_list = true;
      advance();
      while (true) {
        skip_space();
        if (pos_ >= text_.size()) {
          throw PpddlError("unterminated list", node.line, node.column);
        }
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        node.items.push_back(read());
      }
      return node;
    }
    while (pos_ < text_.size()) {
      const char d = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' ||
          d == ';') {
        break;
      }
      node.atom += d;
      advance();
    }
    return node;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

bool is_atom(const Sexp& s, std::string_view word) {
  return !s.is_list && lower(s.atom) == word;
}

const std::string& head(const Sexp& list) {
  static const std::string kEmpty;
  if (!list.is_list || list.items.empty() || list.items[0].is_list) return kEmpty;
  return list.items[0].atom;
}

double parse_number(const Sexp& s, const char* what) {
  if (s.is_list) fail(s, std::string("expected a number for ") + what);
  double v = 0.0;
  const char* first = s.atom.data();
  const char* last = first + s.atom.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    fail(s, std::string("malformed number '") + s.atom + "' for " + what);
  }
  return v;
}

int parse_port(const Sexp& s) {
  if (s.is_list) fail(s, "expected a port");
  std::string_view text = s.atom;
  if (lower(text).rfind("port", 0) == 0) text.remove_prefix(4);
  int port = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), port);
  if (ec != std::errc() || ptr != text.data() + text.size() || port < 1 ||
      port > 65535) {
    fail(s, "malformed port '" + s.atom + "'");
  }
  return port;
}

const std::string& variable(const Sexp& s) {
  if (s.is_list || s.atom.empty() || s.atom[0] != '?') {
    fail(s, "expected a variable");
  }
  return s.atom;
}

const std::string& constant(const Sexp& s) {
  if (s.is_list || s.atom.empty() || s.atom[0] == '?') {
    fail(s, "expected a constant");
  }
  return s.atom;
}

void expect_arity(const Sexp& atom, std::size_t args) {
  if (atom.items.size() != args + 1) {
    fail(atom, "'" + head(atom) + "' takes " + std::to_string(args) +
                   " argument" + (args == 1 ? "" : "s"));
  }
}

// Flattens nested (and ...) into a list of non-and forms.
void flatten_and(const Sexp& s, std::vector<const Sexp*>& out) {
  if (!s.is_list || s.items.empty()) fail(s, "expected a formula");
  if (is_atom(s.items[0], "and")) {
    for (std::size_t i = 1; i < s.items.size(); ++i) flatten_and(s.items[i], out);
  } else {
    out.push_back(&s);
  }
}

struct ActionDraft {
  std::string name;
  std::vector<std::string> parameters;
  std::optional<std::string> source_var;
  std::optional<std::string> target_var;
  OsDescriptor os;
  std::string service;
  std::optional<int> port;
  Protocol protocol = Protocol::kTcp;
  bool compromised = false;

  // Effects.
  std::optional<ProbeKind> probe;
  bool exploit = false;
  std::string privilege;
  std::optional<double> prob;
  std::optional<double> cost;
};

void bind(std::optional<std::string>& slot, const Sexp& arg, const char* role) {
  const std::string& v = variable(arg);
  if (slot && *slot != v) {
    fail(arg, std::string("conflicting ") + role + " variable " + v);
  }
  slot = v;
}

void read_precondition(const Sexp& atom, ActionDraft& d) {
  const std::string name = lower(head(atom));
  if (name.empty()) fail(atom, "expected a predicate");
  auto set_os = [&](std::string OsDescriptor::*field) {
    expect_arity(atom, 2);
    bind(d.target_var, atom.items[1], "target");
    d.os.*field = constant(atom.items[2]);
  };
  if (name == "compromised") {
    expect_arity(atom, 1);
    bind(d.source_var, atom.items[1], "source");
    d.compromised = true;
  } else if (name == "has_os") {
    set_os(&OsDescriptor::family);
  } else if (name == "has_os_version") {
    set_os(&OsDescriptor::version);
  } else if (name == "has_os_edition") {
    set_os(&OsDescriptor::edition);
  } else if (name == "has_os_servicepack") {
    set_os(&OsDescriptor::servicepack);
  } else if (name == "has_architecture") {
    set_os(&OsDescriptor::architecture);
  } else if (name == "has_service") {
    expect_arity(atom, 2);
    bind(d.target_var, atom.items[1], "target");
    d.service = constant(atom.items[2]);
  } else if (name == "tcp_connectivity" || name == "udp_connectivity") {
    expect_arity(atom, 3);
    bind(d.source_var, atom.items[1], "source");
    bind(d.target_var, atom.items[2], "target");
    d.port = parse_port(atom.items[3]);
    d.protocol = name == "tcp_connectivity" ? Protocol::kTcp : Protocol::kUdp;
  } else {
    fail(atom, "unsupported precondition '" + head(atom) + "'");
  }
}

void set_probe(ActionDraft& d, ProbeKind kind, const Sexp& at) {
  if (d.probe || d.exploit) fail(at, "action already has a result effect");
  d.probe = kind;
}

void read_effect(const Sexp& form, ActionDraft& d, bool inside_probabilistic) {
  const std::string name = lower(head(form));
  if (name == "probabilistic") {
    if (inside_probabilistic) fail(form, "nested 'probabilistic' is unsupported");
    if (d.prob) fail(form, "only one 'probabilistic' effect is supported");
    if (form.items.size() != 3) {
      fail(form, "'probabilistic' supports a single (probability effect) pair");
    }
    const double p = parse_number(form.items[1], "probability");
    if (p < 0.0 || p > 1.0) fail(form.items[1], "probability outside [0, 1]");
    d.prob = p;
    std::vector<const Sexp*> inner;
    flatten_and(form.items[2], inner);
    for (const Sexp* e : inner) read_effect(*e, d, true);
    return;
  }
  if (name == "increase") {
    if (inside_probabilistic) {
      fail(form, "time increase inside a probabilistic outcome is unsupported");
    }
    if (form.items.size() != 3 || !form.items[1].is_list ||
        form.items[1].items.size() != 1 || !is_atom(form.items[1].items[0], "time")) {
      fail(form, "only (increase (time) k) is supported");
    }
    if (d.cost) fail(form, "duplicate time increase");
    const double k = parse_number(form.items[2], "time increase");
    if (k < 0.0) fail(form.items[2], "time increase must be >= 0");
    d.cost = k;
    return;
  }
  if (name == "installed_agent") {
    if (form.items.size() != 2 && form.items.size() != 3) {
      fail(form, "'installed_agent' takes a host and an optional privilege");
    }
    if (d.probe || d.exploit) fail(form, "action already has a result effect");
    bind(d.target_var, form.items[1], "target");
    if (form.items.size() == 3) d.privilege = constant(form.items[2]);
    d.exploit = true;
    return;
  }
  if (name == "connected") {
    expect_arity(form, 2);
    bind(d.source_var, form.items[1], "source");
    bind(d.target_var, form.items[2], "target");
    set_probe(d, ProbeKind::kHostProbe, form);
    return;
  }
  if (name == "tcp_connectivity" || name == "udp_connectivity") {
    expect_arity(form, 3);
    bind(d.source_var, form.items[1], "source");
    bind(d.target_var, form.items[2], "target");
    if (form.items[3].is_list || form.items[3].atom.empty() ||
        form.items[3].atom[0] != '?') {
      d.port = parse_port(form.items[3]);
    }
    d.protocol = name == "tcp_connectivity" ? Protocol::kTcp : Protocol::kUdp;
    set_probe(d, ProbeKind::kPortProbe, form);
    return;
  }
  if (name == "os_known") {
    expect_arity(form, 1);
    bind(d.target_var, form.items[1], "target");
    set_probe(d, ProbeKind::kOsDetect, form);
    return;
  }
  if (name.empty()) fail(form, "expected an effect");
  fail(form, "unsupported effect '" + head(form) + "'");
}

std::vector<std::string> read_parameters(const Sexp& list) {
  if (!list.is_list) fail(list, "expected a parameter list");
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < list.items.size(); ++i) {
    const Sexp& item = list.items[i];
    if (is_atom(item, "-")) {
      if (i + 1 >= list.items.size() || !is_atom(list.items[i + 1], "host")) {
        fail(item, "only the type 'host' is supported");
      }
      ++i;
      continue;
    }
    const std::string& v = variable(item);
    if (std::find(vars.begin(), vars.end(), v) != vars.end()) {
      fail(item, "duplicate parameter " + v);
    }
    vars.push_back(v);
  }
  return vars;
}

void read_action(const Sexp& form, DomainFragment& out) {
  if (form.items.size() < 2 || form.items[1].is_list) {
    fail(form, "':action' needs a name");
  }
  ActionDraft d;
  d.name = form.items[1].atom;
  bool have_params = false, have_pre = false, have_eff = false;
  for (std::size_t i = 2; i < form.items.size(); i += 2) {
    const Sexp& key = form.items[i];
    if (i + 1 >= form.items.size()) fail(key, "missing value after keyword");
    const Sexp& value = form.items[i + 1];
    if (is_atom(key, ":parameters")) {
      if (have_params) fail(key, "duplicate ':parameters'");
      d.parameters = read_parameters(value);
      have_params = true;
    } else if (is_atom(key, ":precondition")) {
      if (have_pre) fail(key, "duplicate ':precondition'");
      std::vector<const Sexp*> atoms;
      flatten_and(value, atoms);
      for (const Sexp* a : atoms) read_precondition(*a, d);
      have_pre = true;
    } else if (is_atom(key, ":effect")) {
      if (have_eff) fail(key, "duplicate ':effect'");
      std::vector<const Sexp*> effects;
      flatten_and(value, effects);
      for (const Sexp* e : effects) read_effect(*e, d, false);
      have_eff = true;
    } else {
      fail(key, "unsupported action field '" + (key.is_list ? "(...)" : key.atom) + "'");
    }
  }
  if (!have_eff || (!d.exploit && !d.probe)) {
    fail(form, "action '" + d.name + "' has no supported result effect");
  }
  for (const auto* var : {&d.source_var, &d.target_var}) {
    if (*var && have_params &&
        std::find(d.parameters.begin(), d.parameters.end(), **var) ==
            d.parameters.end()) {
      fail(form, "variable " + **var + " is not a parameter of '" + d.name + "'");
    }
  }

  const double prob = d.prob.value_or(1.0);
  const double cost = d.cost.value_or(0.0);
  if (d.exploit) {
    if (!d.port) fail(form, "exploit '" + d.name + "' needs a connectivity precondition");
    if (d.service.empty()) fail(form, "exploit '" + d.name + "' needs a has_service precondition");
    out.exploits.push_back(PpddlExploit{d.name, d.os, d.service, *d.port, d.protocol,
                                        d.privilege, d.compromised, prob, cost});
  } else {
    out.probes.push_back(PpddlProbe{d.name, *d.probe, prob, cost});
  }
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string os_key_for(const OsDescriptor& os) {
  std::string key;
  for (const std::string* f :
       {&os.family, &os.version, &os.edition, &os.servicepack, &os.architecture}) {
    if (f->empty()) continue;
    if (!key.empty()) key += '-';
    key += lower(*f);
  }
  return key.empty() ? "any" : key;
}

}  // namespace

PpddlError::PpddlError(const std::string& message, std::size_t line,
                       std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

DomainFragment parse_ppddl(std::string_view text) {
  const std::vector<Sexp> top = Reader(text).read_all();
  if (top.empty()) throw PpddlError("empty document", 1, 1);

  const auto is_action = [](const Sexp& s) {
    return s.is_list && !s.items.empty() && is_atom(s.items[0], ":action");
  };
  if (is_action(top[0])) {
    // Bare action list without a domain wrapper.
    DomainFragment out;
    for (const Sexp& s : top) {
      if (!is_action(s)) fail(s, "expected (:action ...)");
      read_action(s, out);
    }
    return out;
  }
  if (top.size() != 1) fail(top[1], "expected a single (define ...) form");
  const Sexp& def = top[0];
  if (!def.is_list || def.items.empty() || !is_atom(def.items[0], "define")) {
    fail(def, "expected (define ...)");
  }
  if (def.items.size() >= 2 && def.items[1].is_list && !def.items[1].items.empty() &&
      is_atom(def.items[1].items[0], "problem")) {
    fail(def.items[1], "problem definitions are unsupported");
  }
  if (def.items.size() < 2 || !def.items[1].is_list ||
      def.items[1].items.size() != 2 || !is_atom(def.items[1].items[0], "domain") ||
      def.items[1].items[1].is_list) {
    fail(def, "expected (domain NAME) after define");
  }

  DomainFragment out;
  out.name = def.items[1].items[1].atom;
  for (std::size_t i = 2; i < def.items.size(); ++i) {
    const Sexp& section = def.items[i];
    if (!section.is_list || section.items.empty() || section.items[0].is_list) {
      fail(section, "expected a domain section");
    }
    if (is_atom(section.items[0], ":action")) {
      read_action(section, out);
    } else {
      fail(section, "unsupported domain section '" + section.items[0].atom + "'");
    }
  }
  return out;
}

std::string write_ppddl(const DomainFragment& f) {
  std::ostringstream os;
  // An unnamed fragment came from a bare action list; write it back as one.
  const bool wrapped = !f.name.empty();
  if (wrapped) os << "(define (domain " << f.name << ")\n";
  for (const PpddlExploit& e : f.exploits) {
    os << "(:action " << e.name << "\n:parameters (?s - host ?t - host)\n"
       << ":precondition (and\n";
    if (e.requires_compromised_source) os << "  (compromised ?s)\n";
    const std::pair<const char*, const std::string*> os_fields[] = {
        {"has_OS", &e.os.family},
        {"has_OS_edition", &e.os.edition},
        {"has_OS_servicepack", &e.os.servicepack},
        {"has_OS_version", &e.os.version},
        {"has_architecture", &e.os.architecture}};
    for (const auto& [pred, value] : os_fields) {
      if (!value->empty()) os << "  (" << pred << " ?t " << *value << ")\n";
    }
    os << "  (has_service ?t " << e.service << ")\n"
       << "  (" << (e.protocol == Protocol::kTcp ? "TCP" : "UDP")
       << "_connectivity ?s ?t port" << e.port << ")\n)\n:effect (and\n";
    std::string agent = "(installed_agent ?t";
    if (!e.privilege.empty()) agent += " " + e.privilege;
    agent += ")";
    if (e.prob != 1.0) {
      os << "  (probabilistic " << format_number(e.prob) << " " << agent << ")\n";
    } else {
      os << "  " << agent << "\n";
    }
    os << "  (increase (time) " << format_number(e.cost) << ")\n))\n";
  }
  for (const PpddlProbe& p : f.probes) {
    std::string result;
    switch (p.kind) {
      case ProbeKind::kHostProbe:
        result = "(connected ?s ?t)";
        break;
      case ProbeKind::kPortProbe:
        result = "(TCP_connectivity ?s ?t ?p)";
        break;
      case ProbeKind::kOsDetect:
        result = "(os_known ?t)";
        break;
    }
    os << "(:action " << p.name << "\n:parameters (?s - host ?t - host"
       << (p.kind == ProbeKind::kPortProbe ? " ?p" : "") << ")\n"
       << ":precondition (and (compromised ?s))\n:effect (and\n";
    if (p.prob != 1.0) {
      os << "  (probabilistic " << format_number(p.prob) << " " << result << ")\n";
    } else {
      os << "  " << result << "\n";
    }
    os << "  (increase (time) " << format_number(p.cost) << ")\n))\n";
  }
  if (wrapped) os << ")\n";
  return os.str();
}

void merge_fragment(Scenario& s, const DomainFragment& f) {
  for (const PpddlExploit& e : f.exploits) {
    std::string os_key;
    for (const auto& [key, descriptor] : s.operating_systems) {
      if (descriptor == e.os) {
        os_key = key;
        break;
      }
    }
    if (os_key.empty()) {
      os_key = os_key_for(e.os);
      for (int n = 2; s.operating_systems.count(os_key); ++n) {
        os_key = os_key_for(e.os) + "-" + std::to_string(n);
      }
      s.operating_systems[os_key] = e.os;
    }
    if (std::find(s.services.begin(), s.services.end(), e.service) == s.services.end()) {
      s.services.push_back(e.service);
    }
    auto it = std::find_if(s.exploits.begin(), s.exploits.end(),
                           [&](const ExploitTemplate& t) { return t.name == e.name; });
    if (it == s.exploits.end()) {
      s.exploits.push_back(ExploitTemplate{e.name, e.service, e.port, e.protocol, {}});
      it = std::prev(s.exploits.end());
    } else if (it->service != e.service || it->port != e.port ||
               it->protocol != e.protocol) {
      throw SemanticError("exploits", "exploit '" + e.name +
                                          "' redefined with a different service or port");
    }
    it->targets.push_back(ExploitTarget{os_key, e.prob, e.cost});
  }
  for (const PpddlProbe& p : f.probes) {
    ProbeStats stats{p.prob, p.cost};
    switch (p.kind) {
      case ProbeKind::kHostProbe:
        s.probes.host_probe = stats;
        break;
      case ProbeKind::kPortProbe:
        s.probes.port_probe = stats;
        break;
      case ProbeKind::kOsDetect:
        s.probes.os_detect = stats;
        break;
    }
  }
  validate_scenario(s);
}

}  // namespace probplan
