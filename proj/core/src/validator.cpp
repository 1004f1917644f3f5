#include "contractcase/validator.hpp"

#include <algorithm>
#include <map>

#include "contractcase/graph.hpp"
#include "text_util.hpp"

namespace contractcase {

ValidationStats compute_stats(const SpecificationStructure& structure) {
  ValidationStats stats;
  stats.components = structure.components().size();
  stats.contracts = structure.contract_count();
  stats.assumptions = structure.assumption_count();
  stats.refinements = structure.refinements().size();
  stats.bindings = structure.binding_count();
  for (const auto& c : structure.components())
    stats.environmental += static_cast<std::size_t>(
        std::count_if(c.assumptions.begin(), c.assumptions.end(), [](const Assumption& a) { return a.environmental; }));
  return stats;
}

Diagnostics check_discharge(const SpecificationStructure& structure, const ValidationOptions& options) {
  std::map<QualifiedId, std::vector<std::string>> dischargers;
  for (const auto& r : structure.refinements())
    for (const auto& b : r.bindings) dischargers[b.target].push_back(r.id + " (" + b.source.str() + ")");

  Diagnostics out;
  for (const auto& c : structure.components()) {
    for (const auto& a : c.assumptions) {
      const QualifiedId id{c.name, a.id};
      const auto location = structure.locations().find(id.str());
      const auto it = dischargers.find(id);
      const auto count = it == dischargers.end() ? 0 : it->second.size();
      if (count == 0 && !a.environmental) {
        out.push_back(make_error("V201", "undischarged assumption " + id.str(), location));
      } else if (count >= 2) {
        auto finding = make_error("V202", "multiply discharged assumption " + id.str() + " by " +
                                              detail::join(it->second, ", "),
                                  location);
        if (options.allow_multi_discharge) finding.severity = Severity::warning;
        out.push_back(std::move(finding));
      }
    }
  }
  return out;
}

std::vector<std::vector<QualifiedId>> support_cycles(const SpecificationStructure& structure) {
  const auto graph = support_graph(structure);
  Adjacency adjacency(graph.nodes.size());
  for (const auto& e : graph.edges)
    if (e.kind != SupportEdgeKind::delegation) adjacency[e.from].push_back(e.to);

  const auto scc = strongly_connected_components(adjacency);
  std::vector<std::vector<QualifiedId>> out;
  for (std::size_t k = 0; k < scc.components.size(); ++k) {
    if (!scc.is_cyclic(adjacency, k)) continue;
    std::vector<QualifiedId> members;
    for (auto v : scc.components[k]) members.push_back(graph.nodes[v].id);
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Diagnostics check_cycles(const SpecificationStructure& structure, const ValidationOptions& options) {
  Diagnostics out;
  for (const auto& cycle : support_cycles(structure)) {
    std::vector<std::string> names;
    for (const auto& id : cycle) names.push_back(id.str());
    auto finding = make_error("V301", "support cycle through " + detail::join(names, ", "),
                              structure.locations().find(names.front()));
    if (options.tolerate_cycles) finding.severity = Severity::warning;
    out.push_back(std::move(finding));
  }
  return out;
}

Diagnostics check_allocation(const SpecificationStructure& structure) {
  Diagnostics out;
  for (const auto& r : structure.refinements()) {
    auto scope = structure.children(r.allocated_to);
    scope.push_back(r.allocated_to);
    auto in_scope = [&](const std::string& component) {
      return std::find(scope.begin(), scope.end(), component) != scope.end();
    };
    for (std::size_t i = 0; i < r.bindings.size(); ++i) {
      const auto& b = r.bindings[i];
      std::vector<std::string> outside;
      if (!in_scope(b.source.component)) outside.push_back("source " + b.source.str());
      if (!in_scope(b.target.component)) outside.push_back("target " + b.target.str());
      if (outside.empty()) continue;
      out.push_back(make_error("V401",
                               "refinement " + r.id + " allocated to " + r.allocated_to + " binds " +
                                   detail::join(outside, " and ") + " outside its scope",
                               structure.locations().find(SourceMap::binding_key(r.id, i))));
    }
  }
  return out;
}

Diagnostics check_inheritance(const SpecificationStructure& structure) {
  const auto ids = structure.contract_ids();
  auto vertex = [&](const QualifiedId& id) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  Adjacency adjacency(ids.size());
  for (const auto& c : structure.components())
    for (const auto& k : c.contracts)
      if (k.inherits) adjacency[vertex({c.name, k.id})].push_back(vertex(*k.inherits));

  const auto scc = strongly_connected_components(adjacency);
  Diagnostics out;
  std::vector<bool> on_cycle(ids.size(), false);
  for (std::size_t k = 0; k < scc.components.size(); ++k) {
    if (!scc.is_cyclic(adjacency, k)) continue;
    std::vector<std::string> names;
    for (auto v : scc.components[k]) {
      on_cycle[v] = true;
      names.push_back(ids[v].str());
    }
    std::sort(names.begin(), names.end());
    out.push_back(make_error("V502", "inheritance cycle through " + detail::join(names, ", "),
                             structure.locations().find(names.front())));
  }

  for (const auto& c : structure.components()) {
    for (const auto& k : c.contracts) {
      if (!k.inherits) continue;
      const QualifiedId heir{c.name, k.id};
      if (on_cycle[vertex(heir)]) continue;
      const auto ancestors = structure.ancestors(c.name);
      if (std::find(ancestors.begin(), ancestors.end(), k.inherits->component) == ancestors.end())
        out.push_back(make_error("V501",
                                 "contract " + heir.str() + " inherits " + k.inherits->str() + " but " +
                                     k.inherits->component + " is not an ancestor of " + c.name,
                                 structure.locations().find(heir.str())));
    }
  }
  return out;
}

ValidationReport validate_all(const SpecificationStructure& structure, const ValidationOptions& options) {
  ValidationReport report;
  report.stats = compute_stats(structure);
  for (auto findings : {check_discharge(structure, options), check_cycles(structure, options),
                        check_allocation(structure), check_inheritance(structure)})
    report.findings.insert(report.findings.end(), findings.begin(), findings.end());
  sort_and_dedupe(report.findings);
  return report;
}

}  // namespace contractcase
