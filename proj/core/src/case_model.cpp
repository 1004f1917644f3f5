#include "contractcase/case_model.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "text_util.hpp"

namespace contractcase {

std::string_view to_string(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::claim:
      return "claim";
    case NodeKind::inference:
      return "inference";
    case NodeKind::evidence:
      return "evidence";
    case NodeKind::away:
      return "away";
  }
  return "claim";
}

std::optional<NodeKind> node_kind_from_string(std::string_view text) noexcept {
  if (text == "claim") return NodeKind::claim;
  if (text == "inference") return NodeKind::inference;
  if (text == "evidence") return NodeKind::evidence;
  if (text == "away") return NodeKind::away;
  return std::nullopt;
}

const ArgumentNode* AssuranceModule::find(std::string_view node_id) const {
  for (const auto& node : nodes)
    if (node.id == node_id) return &node;
  return nullptr;
}

CaseSet::CaseSet(std::vector<AssuranceModule> modules) : modules_(std::move(modules)) {
  for (std::size_t i = 0; i < modules_.size(); ++i) {
    by_id_.emplace(modules_[i].id, i);
    by_target_[modules_[i].target].push_back(i);
  }
}

const AssuranceModule* CaseSet::find(std::string_view module_id) const {
  const auto it = by_id_.find(module_id);
  return it == by_id_.end() ? nullptr : &modules_[it->second];
}

std::vector<const AssuranceModule*> CaseSet::for_target(const Target& target) const {
  std::vector<const AssuranceModule*> out;
  if (const auto it = by_target_.find(target); it != by_target_.end())
    for (auto i : it->second) out.push_back(&modules_[i]);
  return out;
}

const AssuranceModule* CaseSet::module_for(const Target& target) const {
  const auto it = by_target_.find(target);
  return it == by_target_.end() ? nullptr : &modules_[it->second.front()];
}

namespace {

SourceLocation target_location(const SpecificationStructure& structure, const Target& target) {
  return structure.locations().find(target.kind == Target::Kind::contract ? target.ref
                                                                          : SourceMap::refinement_key(target.ref));
}

}  // namespace

Diagnostics check_module_coverage(const SpecificationStructure& structure, const CaseSet& cases) {
  Diagnostics out;
  for (const auto& target : assurance_targets(structure)) {
    const auto modules = cases.for_target(target);
    if (modules.empty()) {
      out.push_back(make_error("C101", "no assurance module for " + std::string(to_string(target.kind)) + " " + target.ref,
                               target_location(structure, target)));
    } else if (modules.size() > 1) {
      std::vector<std::string> ids;
      for (const auto* m : modules) ids.push_back(m->id);
      out.push_back(make_error("C103",
                               std::to_string(modules.size()) + " modules target " + target.ref + ": " +
                                   detail::join(ids, ", "),
                               modules[1]->location));
    }
  }
  for (const auto& module : cases.modules())
    if (!target_exists(structure, module.target))
      out.push_back(make_error("C102",
                               "module " + module.id + " targets unknown " + std::string(to_string(module.target.kind)) +
                                   " " + module.target.ref,
                               module.location));
  sort_and_dedupe(out);
  return out;
}

Diagnostics check_module_wellformed(const AssuranceModule& module, const CaseCheckOptions& options) {
  Diagnostics out;
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < module.nodes.size(); ++i) index.emplace(module.nodes[i].id, i);
  const std::string in = " in module " + module.id;

  const auto top = index.find(module.top);
  if (top == index.end())
    out.push_back(make_error("C205", "top " + module.top + " names no node" + in, module.location));
  else if (module.nodes[top->second].kind != NodeKind::claim)
    out.push_back(make_error("C205", "top node " + module.top + in + " is not a claim", module.location));

  Adjacency graph(module.nodes.size());
  for (std::size_t i = 0; i < module.nodes.size(); ++i) {
    const auto& node = module.nodes[i];
    const auto& where = node.location.known() ? node.location : module.location;
    const bool leaf_kind = node.kind == NodeKind::evidence || node.kind == NodeKind::away;
    if (leaf_kind && !node.children.empty())
      out.push_back(make_error("C204", std::string(to_string(node.kind)) + " node " + node.id + in + " has children",
                               where));

    for (const auto& child_id : node.children) {
      const auto child = index.find(child_id);
      if (child == index.end()) {
        out.push_back(make_error("C206", "node " + node.id + in + " names missing child " + child_id, where));
        continue;
      }
      graph[i].push_back(child->second);
      const auto child_kind = module.nodes[child->second].kind;
      const bool allowed = (node.kind == NodeKind::claim && child_kind != NodeKind::claim) ||
                           (node.kind == NodeKind::inference && child_kind != NodeKind::inference) || leaf_kind;
      if (!allowed)
        out.push_back(make_error("C206",
                                 std::string(to_string(node.kind)) + " " + node.id + in + " cannot have " +
                                     std::string(to_string(child_kind)) + " child " + child_id,
                                 where));
      if (options.strict_inference && node.kind == NodeKind::claim && child_kind != NodeKind::inference)
        out.push_back(make_error("C208", "claim " + node.id + in + " is supported by " +
                                             std::string(to_string(child_kind)) + " " + child_id +
                                             " without an inference",
                                 where));
    }

    if (node.kind == NodeKind::inference && node.children.empty())
      out.push_back(make_error("C207", "inference " + node.id + in + " has no children", where));
    if (node.kind == NodeKind::claim && node.children.empty() && !node.undeveloped)
      out.push_back(make_error("C203", "leaf claim " + node.id + in + " is not marked undeveloped", where));
    if (node.kind == NodeKind::claim && !node.children.empty() && node.undeveloped)
      out.push_back(make_warning("C209", "claim " + node.id + in + " is marked undeveloped but has children", where));
  }

  const auto scc = strongly_connected_components(graph);
  for (std::size_t k = 0; k < scc.components.size(); ++k) {
    if (!scc.is_cyclic(graph, k)) continue;
    std::vector<std::string> ids;
    for (auto v : scc.components[k]) ids.push_back(module.nodes[v].id);
    std::sort(ids.begin(), ids.end());
    const auto& first = module.nodes[scc.components[k].front()];
    out.push_back(make_error("C201", "argument cycle" + in + " through " + detail::join(ids, ", "),
                             first.location.known() ? first.location : module.location));
  }

  if (top != index.end()) {
    std::vector<bool> reached(module.nodes.size(), false);
    std::deque<std::size_t> queue{top->second};
    reached[top->second] = true;
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      for (auto w : graph[v])
        if (!reached[w]) {
          reached[w] = true;
          queue.push_back(w);
        }
    }
    for (std::size_t i = 0; i < module.nodes.size(); ++i)
      if (!reached[i]) {
        const auto& node = module.nodes[i];
        out.push_back(make_error("C202", "node " + node.id + in + " is unreachable from top " + module.top,
                                 node.location.known() ? node.location : module.location));
      }
  }
  sort_and_dedupe(out);
  return out;
}

AwayLinks link_away_claims(const SpecificationStructure& structure, const CaseSet& cases,
                           const CaseCheckOptions& options) {
  AwayLinks out;
  auto& graph = out.graph;
  for (const auto& module : cases.modules())
    if (cases.find(module.id) == &module) graph.modules.push_back(module.id);
  std::sort(graph.modules.begin(), graph.modules.end());
  graph.adjacency.resize(graph.modules.size());
  auto vertex = [&](const std::string& id) {
    return static_cast<std::size_t>(std::lower_bound(graph.modules.begin(), graph.modules.end(), id) -
                                    graph.modules.begin());
  };

  for (std::size_t from = 0; from < graph.modules.size(); ++from) {
    const auto* module = cases.find(graph.modules[from]);
    for (const auto& node : module->nodes) {
      if (node.kind != NodeKind::away) continue;
      if (cases.find(node.away_target) == nullptr) {
        out.diagnostics.push_back(make_error(
            "C301", "away node " + node.id + " in module " + module->id + " cites unknown module " + node.away_target,
            node.location.known() ? node.location : module->location));
        continue;
      }
      const auto to = vertex(node.away_target);
      graph.edges.emplace_back(from, to);
      graph.adjacency[from].push_back(to);
    }
  }

  for (const auto& component : structure.components()) {
    for (const auto& contract : component.contracts) {
      if (!contract.inherits) continue;
      const QualifiedId heir{component.name, contract.id};
      const auto* heir_module = cases.module_for(Target::contract(heir));
      const auto* parent_module = cases.module_for(Target::contract(*contract.inherits));
      if (heir_module == nullptr || parent_module == nullptr) continue;
      const bool delegated = std::any_of(parent_module->nodes.begin(), parent_module->nodes.end(), [&](const auto& n) {
        return n.kind == NodeKind::away && n.away_target == heir_module->id;
      });
      if (!delegated)
        out.diagnostics.push_back(make_error("C302",
                                             "module " + parent_module->id + " for " + contract.inherits->str() +
                                                 " has no away claim on module " + heir_module->id + " of inheriting " +
                                                 heir.str(),
                                             parent_module->location));
    }
  }

  const auto scc = strongly_connected_components(graph.adjacency);
  for (std::size_t k = 0; k < scc.components.size(); ++k) {
    if (!scc.is_cyclic(graph.adjacency, k)) continue;
    std::vector<std::string> ids;
    for (auto v : scc.components[k]) ids.push_back(graph.modules[v]);
    auto finding = make_error("C303", "inter-module cycle through " + detail::join(ids, ", "),
                              cases.find(ids.front())->location);
    if (options.tolerate_cycles) finding.severity = Severity::warning;
    out.diagnostics.push_back(std::move(finding));
  }
  sort_and_dedupe(out.diagnostics);
  return out;
}

Diagnostics check_case(const SpecificationStructure& structure, const CaseSet& cases, const CaseCheckOptions& options) {
  auto out = check_module_coverage(structure, cases);
  for (const auto& module : cases.modules()) {
    auto findings = check_module_wellformed(module, options);
    out.insert(out.end(), findings.begin(), findings.end());
  }
  auto links = link_away_claims(structure, cases, options);
  out.insert(out.end(), links.diagnostics.begin(), links.diagnostics.end());
  sort_and_dedupe(out);
  return out;
}

}  // namespace contractcase
