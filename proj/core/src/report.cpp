#include "contractcase/report.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "text_util.hpp"

namespace contractcase {
namespace {

std::string dot_quote(std::string_view text) {
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out + '"';
}

void contract_graph(std::ostringstream& os, const SpecificationStructure& structure) {
  for (const auto& c : structure.components()) {
    os << "  subgraph " << dot_quote("cluster_" + c.name) << " {\n";
    os << "    label=" << dot_quote(c.name) << ";\n";
    for (const auto& k : c.contracts) {
      const auto id = c.name + "." + k.id;
      os << "    " << dot_quote(id) << " [label="
         << dot_quote(id + ": " + detail::truncate_utf8(k.guarantee_statement, kLabelLimit)) << "];\n";
    }
    os << "  }\n";
  }

  for (const auto& r : structure.refinements()) {
    for (const auto& b : r.bindings) {
      const auto* target_component = structure.find_component(b.target.component);
      for (const auto& k : target_component->contracts) {
        if (std::find(k.assumes.begin(), k.assumes.end(), b.target.local) == k.assumes.end()) continue;
        os << "  " << dot_quote(b.source.str()) << " -> " << dot_quote(b.target.component + "." + k.id)
           << " [label=" << dot_quote(b.target.local) << "];\n";
      }
    }
  }
  for (const auto& c : structure.components())
    for (const auto& k : c.contracts)
      if (k.inherits)
        os << "  " << dot_quote(k.inherits->str()) << " -> " << dot_quote(c.name + "." + k.id)
           << " [style=dashed];\n";
}

void component_graph(std::ostringstream& os, const SpecificationStructure& structure) {
  for (const auto& c : structure.components())
    os << "  " << dot_quote(c.name) << " [label="
       << dot_quote(c.name + " (" + std::to_string(c.contracts.size()) + " contracts)") << "];\n";

  std::map<std::pair<std::string, std::string>, std::set<std::string>> solid;
  std::vector<std::pair<std::string, std::string>> solid_order;
  for (const auto& r : structure.refinements())
    for (const auto& b : r.bindings) {
      const auto key = std::make_pair(b.source.component, b.target.component);
      if (solid.find(key) == solid.end()) solid_order.push_back(key);
      solid[key].insert(b.target.local);
    }
  for (const auto& key : solid_order) {
    const auto& labels = solid[key];
    os << "  " << dot_quote(key.first) << " -> " << dot_quote(key.second)
       << " [label=" << dot_quote(detail::join({labels.begin(), labels.end()}, ",")) << "];\n";
  }

  std::set<std::pair<std::string, std::string>> dashed;
  for (const auto& c : structure.components())
    for (const auto& k : c.contracts)
      if (k.inherits && dashed.emplace(k.inherits->component, c.name).second)
        os << "  " << dot_quote(k.inherits->component) << " -> " << dot_quote(c.name) << " [style=dashed];\n";
}

}  // namespace

std::string export_dot(const SpecificationStructure& structure, const DotOptions& options) {
  std::ostringstream os;
  os << "digraph specification {\n";
  if (!structure.components().empty()) {
    os << "  rankdir=BT;\n";
    os << "  node [shape=box];\n";
    if (options.by_component)
      component_graph(os, structure);
    else
      contract_graph(os, structure);
  }
  os << "}\n";
  return os.str();
}

Json to_json(const Diagnostic& d) {
  Json j;
  j["severity"] = to_string(d.severity);
  j["code"] = d.code;
  j["file"] = d.location.file;
  j["line"] = d.location.line;
  j["column"] = d.location.column;
  j["message"] = d.message;
  return j;
}

Json to_json(const Diagnostics& diagnostics) {
  Json j = Json::array();
  for (const auto& d : diagnostics) j.push_back(to_json(d));
  return j;
}

Json to_json(const ValidationStats& s) {
  Json j;
  j["components"] = s.components;
  j["contracts"] = s.contracts;
  j["assumptions"] = s.assumptions;
  j["refinements"] = s.refinements;
  j["bindings"] = s.bindings;
  j["environmental"] = s.environmental;
  return j;
}

Json to_json(const std::vector<RiskPrompt>& prompts) {
  Json j = Json::array();
  for (const auto& p : prompts) {
    Json e;
    e["target"] = p.target.ref;
    e["kind"] = to_string(p.kind);
    e["text"] = p.text;
    j.push_back(std::move(e));
  }
  return j;
}

Json to_json(const Coverage& c) {
  Json j;
  j["covered"] = c.covered;
  j["total"] = c.total;
  Json uncovered = Json::array();
  for (const auto& t : c.uncovered) uncovered.push_back(t.ref);
  j["uncovered"] = std::move(uncovered);
  Json by_status;
  for (auto s : {RiskStatus::open, RiskStatus::mitigated, RiskStatus::accepted, RiskStatus::no_risk_found}) {
    const auto it = c.by_status.find(s);
    by_status[std::string(to_string(s))] = it == c.by_status.end() ? 0 : it->second;
  }
  j["by_status"] = std::move(by_status);
  return j;
}

Json to_json(const ModuleGraph& graph) {
  Json j;
  j["modules"] = graph.modules;
  Json edges = Json::array();
  for (const auto& [from, to] : graph.edges) edges.push_back(Json::array({graph.modules[from], graph.modules[to]}));
  j["edges"] = std::move(edges);
  return j;
}

Json to_json(const ConfidenceReport& report) {
  auto values = [](const std::map<std::string, TriValue>& m) {
    Json j = Json::object();
    for (const auto& [k, v] : m) j[k] = v.name();
    return j;
  };
  Json j;
  j["guarantees"] = values(report.guarantees);
  j["assumptions"] = values(report.assumptions);
  j["modules"] = values(report.modules);
  j["nodes"] = values(report.nodes);
  j["cycles"] = report.cycles;
  return j;
}

Json to_json(const std::vector<ValueChange>& changes) {
  Json j = Json::array();
  for (const auto& c : changes) {
    Json e;
    e["scope"] = to_string(c.scope);
    e["key"] = c.key;
    e["before"] = c.before.name();
    e["after"] = c.after.name();
    j.push_back(std::move(e));
  }
  return j;
}

}  // namespace contractcase
