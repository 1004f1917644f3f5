#include "contractcase/spec_model.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "contractcase/graph.hpp"
#include "text_util.hpp"

namespace contractcase {

bool is_identifier(std::string_view text) noexcept {
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (text.empty() || !alpha(text.front())) return false;
  return std::all_of(text.begin(), text.end(), [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

std::optional<QualifiedId> QualifiedId::parse(std::string_view text) {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return std::nullopt;
  QualifiedId id{std::string(text.substr(0, dot)), std::string(text.substr(dot + 1))};
  if (!is_identifier(id.component) || !is_identifier(id.local)) return std::nullopt;
  return id;
}

SourceLocation SourceMap::find(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? SourceLocation{} : it->second;
}

std::string SourceMap::refinement_key(std::string_view id) { return "refinement:" + std::string(id); }

std::string SourceMap::binding_key(std::string_view refinement, std::size_t index) {
  return "binding:" + std::string(refinement) + "#" + std::to_string(index);
}

const ComponentDecl* SpecificationStructure::find_component(std::string_view name) const {
  const auto it = component_index_.find(name);
  return it == component_index_.end() ? nullptr : &components_[it->second];
}

const Contract* SpecificationStructure::find_contract(const QualifiedId& id) const {
  const auto* component = find_component(id.component);
  if (component == nullptr) return nullptr;
  for (const auto& contract : component->contracts)
    if (contract.id == id.local) return &contract;
  return nullptr;
}

const Assumption* SpecificationStructure::find_assumption(const QualifiedId& id) const {
  const auto* component = find_component(id.component);
  if (component == nullptr) return nullptr;
  for (const auto& assumption : component->assumptions)
    if (assumption.id == id.local) return &assumption;
  return nullptr;
}

const Refinement* SpecificationStructure::find_refinement(std::string_view id) const {
  for (const auto& refinement : refinements_)
    if (refinement.id == id) return &refinement;
  return nullptr;
}

std::vector<std::string> SpecificationStructure::ancestors(std::string_view component) const {
  std::vector<std::string> out;
  const auto* current = find_component(component);
  while (current != nullptr && current->parent) {
    out.push_back(*current->parent);
    current = find_component(*current->parent);
  }
  return out;
}

std::vector<std::string> SpecificationStructure::children(std::string_view component) const {
  std::vector<std::string> out;
  for (const auto& c : components_)
    if (c.parent && *c.parent == component) out.push_back(c.name);
  return out;
}

std::vector<QualifiedId> SpecificationStructure::contract_ids() const {
  std::vector<QualifiedId> out;
  for (const auto& c : components_)
    for (const auto& k : c.contracts) out.push_back({c.name, k.id});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<QualifiedId> SpecificationStructure::assumption_ids() const {
  std::vector<QualifiedId> out;
  for (const auto& c : components_)
    for (const auto& a : c.assumptions) out.push_back({c.name, a.id});
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t SpecificationStructure::contract_count() const noexcept {
  std::size_t n = 0;
  for (const auto& c : components_) n += c.contracts.size();
  return n;
}

std::size_t SpecificationStructure::assumption_count() const noexcept {
  std::size_t n = 0;
  for (const auto& c : components_) n += c.assumptions.size();
  return n;
}

std::size_t SpecificationStructure::binding_count() const noexcept {
  std::size_t n = 0;
  for (const auto& r : refinements_) n += r.bindings.size();
  return n;
}

namespace {

class InvariantChecker {
 public:
  InvariantChecker(const std::vector<ComponentDecl>& components, const std::vector<Refinement>& refinements,
                   const SourceMap& locations)
      : components_(components), refinements_(refinements), locations_(locations) {}

  Diagnostics run() {
    index_components();
    check_components();
    check_parent_cycles();
    check_refinements();
    return std::move(diagnostics_);
  }

 private:
  void error(const char* code, std::string message, const std::string& location_key) {
    diagnostics_.push_back(make_error(code, std::move(message), locations_.find(location_key)));
  }

  void identifier(const std::string& text, const char* what, const std::string& location_key) {
    if (!is_identifier(text)) error("E204", std::string("invalid ") + what + " identifier '" + text + "'", location_key);
  }

  void index_components() {
    for (std::size_t i = 0; i < components_.size(); ++i) {
      const auto& c = components_[i];
      identifier(c.name, "component", c.name);
      if (!by_name_.emplace(c.name, i).second) error("E200", "duplicate component " + c.name, c.name);
    }
  }

  const ComponentDecl* component(const std::string& name) const {
    const auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : &components_[it->second];
  }

  const Contract* contract(const QualifiedId& id) const {
    const auto* c = component(id.component);
    if (c == nullptr) return nullptr;
    for (const auto& k : c->contracts)
      if (k.id == id.local) return &k;
    return nullptr;
  }

  const Assumption* assumption(const QualifiedId& id) const {
    const auto* c = component(id.component);
    if (c == nullptr) return nullptr;
    for (const auto& a : c->assumptions)
      if (a.id == id.local) return &a;
    return nullptr;
  }

  void check_components() {
    for (const auto& c : components_) {
      if (c.parent && component(*c.parent) == nullptr)
        error("E210", "dangling parent reference " + *c.parent + " on component " + c.name, c.name);

      std::set<std::string> local_ids;
      std::set<std::string> assumption_ids;
      for (const auto& a : c.assumptions) {
        const auto key = c.name + "." + a.id;
        identifier(a.id, "assumption", key);
        if (!local_ids.insert(a.id).second) error("E201", "duplicate id " + key, key);
        assumption_ids.insert(a.id);
        if (a.statement.empty()) error("E240", "empty statement for assumption " + key, key);
      }
      for (const auto& k : c.contracts) {
        const auto key = c.name + "." + k.id;
        identifier(k.id, "contract", key);
        if (!local_ids.insert(k.id).second) error("E201", "duplicate id " + key, key);
        if (k.guarantee_statement.empty()) error("E240", "empty guarantee statement for contract " + key, key);

        std::set<std::string> seen;
        for (const auto& a : k.assumes) {
          if (!seen.insert(a).second) error("E203", "duplicate assumes entry " + a + " in contract " + key, key);
          if (assumption_ids.count(a) == 0) error("E211", "dangling assumes reference " + c.name + "." + a, key);
        }
        if (k.inherits) {
          if (contract(*k.inherits) == nullptr)
            error("E212", "dangling inherits reference " + k.inherits->str() + " on contract " + key, key);
          else if (k.inherits->component == c.name)
            error("E213", "contract " + key + " inherits from its own component", key);
        }
      }
    }
  }

  void check_parent_cycles() {
    Adjacency graph(components_.size());
    for (std::size_t i = 0; i < components_.size(); ++i) {
      const auto& c = components_[i];
      if (!c.parent) continue;
      const auto it = by_name_.find(*c.parent);
      if (it != by_name_.end()) graph[i].push_back(it->second);
    }
    const auto scc = strongly_connected_components(graph);
    for (std::size_t k = 0; k < scc.components.size(); ++k) {
      if (!scc.is_cyclic(graph, k)) continue;
      std::vector<std::string> names;
      for (auto v : scc.components[k]) names.push_back(components_[v].name);
      std::sort(names.begin(), names.end());
      error("E230", "parent cycle among components " + detail::join(names, ", "), names.front());
    }
  }

  void check_refinements() {
    std::set<std::string> ids;
    for (const auto& r : refinements_) {
      const auto key = SourceMap::refinement_key(r.id);
      identifier(r.id, "refinement", key);
      if (!ids.insert(r.id).second) error("E202", "duplicate refinement " + r.id, key);
      if (component(r.allocated_to) == nullptr)
        error("E216", "dangling allocated reference " + r.allocated_to + " on refinement " + r.id, key);
      if (r.bindings.empty()) error("E231", "refinement " + r.id + " has no bindings", key);
      for (std::size_t i = 0; i < r.bindings.size(); ++i) {
        const auto& b = r.bindings[i];
        const auto bkey = SourceMap::binding_key(r.id, i);
        if (contract(b.source) == nullptr)
          error("E214", "dangling bind source " + b.source.str() + " in refinement " + r.id + " (not a contract)", bkey);
        const auto* target = assumption(b.target);
        if (target == nullptr)
          error("E215", "dangling bind target " + b.target.str() + " in refinement " + r.id + " (not an assumption)",
                bkey);
        else if (target->environmental)
          error("E220", "refinement " + r.id + " binds onto environmental assumption " + b.target.str(), bkey);
      }
    }
  }

  const std::vector<ComponentDecl>& components_;
  const std::vector<Refinement>& refinements_;
  const SourceMap& locations_;
  std::map<std::string, std::size_t> by_name_;
  Diagnostics diagnostics_;
};

}  // namespace

Result<SpecificationStructure> build_structure(std::vector<ComponentDecl> components,
                                               std::vector<Refinement> refinements, SourceMap locations) {
  auto diagnostics = InvariantChecker(components, refinements, locations).run();
  if (!diagnostics.empty()) {
    sort_and_dedupe(diagnostics);
    return diagnostics;
  }
  SpecificationStructure s;
  s.components_ = std::move(components);
  s.refinements_ = std::move(refinements);
  s.locations_ = std::move(locations);
  for (std::size_t i = 0; i < s.components_.size(); ++i) s.component_index_.emplace(s.components_[i].name, i);
  return s;
}

Result<Element> resolve(const SpecificationStructure& structure, const QualifiedId& qid) {
  if (const auto* c = structure.find_contract(qid)) return Element{c};
  if (const auto* a = structure.find_assumption(qid)) return Element{a};

  std::vector<std::string> candidates;
  for (const auto& id : structure.contract_ids()) candidates.push_back(id.str());
  for (const auto& id : structure.assumption_ids()) candidates.push_back(id.str());
  std::string message = "no contract or assumption named " + qid.str();
  if (const auto suggestion = detail::nearest(qid.str(), candidates); !suggestion.empty())
    message += "; did you mean " + suggestion + "?";
  return make_error("E250", std::move(message));
}

std::string_view to_string(SupportEdgeKind kind) noexcept {
  switch (kind) {
    case SupportEdgeKind::assumes:
      return "assumes";
    case SupportEdgeKind::binding:
      return "binding";
    case SupportEdgeKind::delegation:
      return "delegation";
  }
  return "assumes";
}

std::optional<std::size_t> SupportGraph::index_of(const QualifiedId& id) const {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                                   [](const SupportNode& n, const QualifiedId& q) { return n.id < q; });
  if (it == nodes.end() || !(it->id == id)) return std::nullopt;
  return static_cast<std::size_t>(it - nodes.begin());
}

SupportGraph support_graph(const SpecificationStructure& structure) {
  SupportGraph g;
  for (const auto& id : structure.contract_ids()) g.nodes.push_back({id, ElementKind::contract});
  for (const auto& id : structure.assumption_ids()) g.nodes.push_back({id, ElementKind::assumption});
  std::sort(g.nodes.begin(), g.nodes.end(), [](const SupportNode& a, const SupportNode& b) { return a.id < b.id; });

  auto at = [&](const QualifiedId& id) { return *g.index_of(id); };
  for (const auto& c : structure.components()) {
    for (const auto& k : c.contracts) {
      const QualifiedId self{c.name, k.id};
      for (const auto& a : k.assumes) g.edges.push_back({at({c.name, a}), at(self), SupportEdgeKind::assumes, {}});
      if (k.inherits) g.edges.push_back({at(*k.inherits), at(self), SupportEdgeKind::delegation, {}});
    }
  }
  for (const auto& r : structure.refinements())
    for (const auto& b : r.bindings) g.edges.push_back({at(b.source), at(b.target), SupportEdgeKind::binding, r.id});

  std::sort(g.edges.begin(), g.edges.end(), [](const SupportEdge& a, const SupportEdge& b) {
    return std::tie(a.from, a.to, a.kind, a.refinement) < std::tie(b.from, b.to, b.kind, b.refinement);
  });
  return g;
}

}  // namespace contractcase

namespace contractcase {

Target Target::from_string(std::string_view text) {
  const bool is_contract = text.find('.') != std::string_view::npos;
  return {is_contract ? Kind::contract : Kind::refinement, std::string(text)};
}

std::string_view to_string(Target::Kind kind) noexcept {
  return kind == Target::Kind::contract ? "contract" : "refinement";
}

bool target_exists(const SpecificationStructure& structure, const Target& target) {
  if (target.kind == Target::Kind::refinement) return structure.find_refinement(target.ref) != nullptr;
  const auto qid = QualifiedId::parse(target.ref);
  return qid && structure.find_contract(*qid) != nullptr;
}

std::vector<Target> assurance_targets(const SpecificationStructure& structure) {
  std::vector<Target> out;
  for (const auto& id : structure.contract_ids()) out.push_back(Target::contract(id));
  std::vector<std::string> refinements;
  for (const auto& r : structure.refinements()) refinements.push_back(r.id);
  std::sort(refinements.begin(), refinements.end());
  for (const auto& r : refinements) out.push_back(Target::refinement(r));
  return out;
}

}  // namespace contractcase
