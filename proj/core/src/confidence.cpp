#include "contractcase/confidence.hpp"

#include <algorithm>

namespace contractcase {

NodeValues evaluate_module(const AssuranceModule& module, const AssessmentMap& assessment,
                           const std::map<std::string, TriValue, std::less<>>& away_values) {
  NodeValues values;
  std::vector<std::string> in_progress;

  auto value_of = [&](const auto& self, const ArgumentNode& node) -> TriValue {
    if (const auto it = values.find(node.id); it != values.end()) return it->second;
    // Only reachable on malformed (cyclic) input; such a node stays Unknown.
    if (std::find(in_progress.begin(), in_progress.end(), node.id) != in_progress.end()) return TriValue::unknown();
    in_progress.push_back(node.id);

    TriValue result = TriValue::unknown();
    switch (node.kind) {
      case NodeKind::evidence:
        if (const auto it = assessment.find(module.leaf_key(node)); it != assessment.end()) result = it->second;
        break;
      case NodeKind::away:
        if (const auto it = away_values.find(node.away_target); it != away_values.end()) result = it->second;
        break;
      case NodeKind::inference:
      case NodeKind::claim: {
        const bool conjunctive = node.kind == NodeKind::inference;
        bool any = false;
        TriValue acc = conjunctive ? TriValue::supported() : TriValue::contradicted();
        for (const auto& child_id : node.children) {
          const auto* child = module.find(child_id);
          const auto v = child != nullptr ? self(self, *child) : TriValue::unknown();
          acc = conjunctive ? meet(acc, v) : join(acc, v);
          any = true;
        }
        result = any ? acc : TriValue::unknown();
        break;
      }
    }
    in_progress.pop_back();
    values.emplace(node.id, result);
    return result;
  };

  for (const auto& node : module.nodes) value_of(value_of, node);
  return values;
}

ConfidenceEngine::ConfidenceEngine(const SpecificationStructure& structure, const CaseSet& cases)
    : structure_(&structure), cases_(&cases) {
  auto add = [&](VertexKind kind, std::string key) {
    index_.emplace(std::make_pair(kind, key), vertices_.size());
    vertices_.push_back({kind, std::move(key)});
  };

  std::vector<std::string> module_ids;
  for (const auto& m : cases.modules())
    if (cases.find(m.id) == &m) module_ids.push_back(m.id);
  std::sort(module_ids.begin(), module_ids.end());
  for (const auto& id : module_ids) add(VertexKind::module, id);
  for (const auto& id : structure.contract_ids()) add(VertexKind::guarantee, id.str());
  for (const auto& id : structure.assumption_ids()) {
    if (structure.find_assumption(id)->environmental)
      environmental_.push_back(id.str());
    else
      add(VertexKind::assumption, id.str());
  }

  for (const auto& id : module_ids) {
    const auto* m = cases.find(id);
    for (const auto& node : m->nodes)
      if (node.kind == NodeKind::evidence) leaves_.push_back(m->leaf_key(node));
  }
  leaves_.insert(leaves_.end(), environmental_.begin(), environmental_.end());
  std::sort(leaves_.begin(), leaves_.end());
  leaves_.erase(std::unique(leaves_.begin(), leaves_.end()), leaves_.end());

  depends_on_.resize(vertices_.size());
  auto module_vertex = [&](const AssuranceModule* m) -> std::optional<std::size_t> {
    if (m == nullptr || cases.find(m->id) != m) return std::nullopt;
    return vertex_of(VertexKind::module, m->id);
  };

  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    auto& deps = depends_on_[v];
    const auto& key = vertices_[v].key;
    switch (vertices_[v].kind) {
      case VertexKind::module:
        for (const auto& node : cases.find(key)->nodes) {
          if (node.kind != NodeKind::away) continue;
          const auto* cited = cases.find(node.away_target);
          if (cited == nullptr) continue;
          if (cited->target.kind == Target::Kind::contract && target_exists(structure, cited->target))
            deps.push_back(vertex_of(VertexKind::guarantee, cited->target.ref));
          else
            deps.push_back(vertex_of(VertexKind::module, cited->id));
        }
        break;
      case VertexKind::guarantee: {
        const auto qid = *QualifiedId::parse(key);
        if (const auto mv = module_vertex(cases.module_for(Target::contract(qid)))) deps.push_back(*mv);
        for (const auto& a : structure.find_contract(qid)->assumes) {
          const QualifiedId aid{qid.component, a};
          if (!structure.find_assumption(aid)->environmental) deps.push_back(vertex_of(VertexKind::assumption, aid.str()));
        }
        break;
      }
      case VertexKind::assumption: {
        const auto qid = *QualifiedId::parse(key);
        for (const auto& r : structure.refinements())
          for (const auto& b : r.bindings) {
            if (!(b.target == qid)) continue;
            if (const auto mv = module_vertex(cases.module_for(Target::refinement(r.id)))) deps.push_back(*mv);
            deps.push_back(vertex_of(VertexKind::guarantee, b.source.str()));
          }
        break;
      }
    }
    std::sort(deps.begin(), deps.end());
    deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
  }

  auto scc = strongly_connected_components(depends_on_);
  for (std::size_t k = 0; k < scc.components.size(); ++k) cyclic_.push_back(scc.is_cyclic(depends_on_, k));
  order_ = std::move(scc.components);
}

std::size_t ConfidenceEngine::vertex_of(VertexKind kind, const std::string& key) const {
  return index_.at(std::make_pair(kind, key));
}

bool ConfidenceEngine::is_leaf(std::string_view key) const {
  return std::binary_search(leaves_.begin(), leaves_.end(), key);
}

TriValue ConfidenceEngine::leaf_value(const AssessmentMap& assessment, std::string_view key) const {
  if (const auto it = assessment.find(key); it != assessment.end()) return it->second;
  const bool environmental = std::find(environmental_.begin(), environmental_.end(), key) != environmental_.end();
  return environmental ? TriValue::supported() : TriValue::unknown();
}

Diagnostics ConfidenceEngine::check_assessment(const AssessmentMap& assessment) const {
  Diagnostics out;
  for (const auto& [key, value] : assessment)
    if (!is_leaf(key))
      out.push_back(make_error("E502", "assessment key " + key +
                                           " is neither an evidence node nor an environmental assumption"));
  return out;
}

Result<ConfidenceEngine> ConfidenceEngine::create(const SpecificationStructure& structure, const CaseSet& cases,
                                                  const ConfidenceOptions& options) {
  Diagnostics blocking;
  for (auto findings : {validate_all(structure, options.validation()).findings,
                        check_case(structure, cases, options.case_checks())})
    for (auto& f : findings)
      if (f.is_error()) blocking.push_back(std::move(f));
  if (!blocking.empty()) {
    sort_and_dedupe(blocking);
    blocking.insert(blocking.begin(),
                    make_error("E501", "confidence prerequisites not met: " + std::to_string(blocking.size()) +
                                           " error finding(s) in validation or case checks"));
    return blocking;
  }
  return ConfidenceEngine(structure, cases);
}

ConfidenceReport ConfidenceEngine::evaluate(const AssessmentMap& assessment) const {
  const auto& structure = *structure_;
  const auto& cases = *cases_;
  std::vector<TriValue> values(vertices_.size(), TriValue::unknown());
  ConfidenceReport report;

  auto module_value = [&](const AssuranceModule* m) {
    if (m == nullptr || cases.find(m->id) != m) return TriValue::unknown();
    return values[vertex_of(VertexKind::module, m->id)];
  };

  auto compute = [&](std::size_t v, NodeValues* nodes) -> TriValue {
    const auto& key = vertices_[v].key;
    switch (vertices_[v].kind) {
      case VertexKind::module: {
        const auto* m = cases.find(key);
        std::map<std::string, TriValue, std::less<>> away;
        for (const auto& node : m->nodes) {
          if (node.kind != NodeKind::away) continue;
          const auto* cited = cases.find(node.away_target);
          if (cited == nullptr) continue;
          const bool contract = cited->target.kind == Target::Kind::contract && target_exists(structure, cited->target);
          away[cited->id] = contract ? values[vertex_of(VertexKind::guarantee, cited->target.ref)]
                                     : values[vertex_of(VertexKind::module, cited->id)];
        }
        *nodes = evaluate_module(*m, assessment, away);
        const auto top = nodes->find(m->top);
        return top == nodes->end() ? TriValue::unknown() : top->second;
      }
      case VertexKind::guarantee: {
        const auto qid = *QualifiedId::parse(key);
        auto result = module_value(cases.module_for(Target::contract(qid)));
        for (const auto& a : structure.find_contract(qid)->assumes) {
          const QualifiedId aid{qid.component, a};
          const auto av = structure.find_assumption(aid)->environmental
                              ? leaf_value(assessment, aid.str())
                              : values[vertex_of(VertexKind::assumption, aid.str())];
          result = meet(result, av);
        }
        return result;
      }
      case VertexKind::assumption: {
        const auto qid = *QualifiedId::parse(key);
        bool any = false;
        auto result = TriValue::contradicted();
        for (const auto& r : structure.refinements())
          for (const auto& b : r.bindings) {
            if (!(b.target == qid)) continue;
            any = true;
            const auto via = meet(module_value(cases.module_for(Target::refinement(r.id))),
                                  values[vertex_of(VertexKind::guarantee, b.source.str())]);
            result = join(result, via);
          }
        return any ? result : TriValue::unknown();
      }
    }
    return TriValue::unknown();
  };

  for (std::size_t k = 0; k < order_.size(); ++k) {
    const auto& members = order_[k];
    if (cyclic_[k])
      for (auto v : members) values[v] = TriValue::unknown();

    // A cyclic group starts at the cap and descends to its greatest fixpoint;
    // every step can only lower a value, so this stops within 2 * |members|
    // rounds.
    std::vector<NodeValues> node_values(members.size());
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < members.size(); ++i) {
        const auto v = members[i];
        auto next = compute(v, &node_values[i]);
        if (cyclic_[k]) next = meet(next, TriValue::unknown());
        changed = changed || (cyclic_[k] && next != values[v]);
        values[v] = next;
      }
    }

    for (std::size_t i = 0; i < members.size(); ++i) {
      const auto v = members[i];
      if (vertices_[v].kind == VertexKind::module)
        for (const auto& [node, value] : node_values[i]) report.nodes.emplace(vertices_[v].key + "." + node, value);
    }

    if (cyclic_[k]) {
      std::vector<std::string> labels;
      for (auto v : members)
        labels.push_back(vertices_[v].kind == VertexKind::module ? "module:" + vertices_[v].key : vertices_[v].key);
      std::sort(labels.begin(), labels.end());
      report.cycles.push_back(std::move(labels));
    }
  }
  std::sort(report.cycles.begin(), report.cycles.end());

  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    switch (vertices_[v].kind) {
      case VertexKind::module:
        report.modules.emplace(vertices_[v].key, values[v]);
        break;
      case VertexKind::guarantee:
        report.guarantees.emplace(vertices_[v].key, values[v]);
        break;
      case VertexKind::assumption:
        report.assumptions.emplace(vertices_[v].key, values[v]);
        break;
    }
  }
  for (const auto& id : environmental_) report.assumptions.emplace(id, leaf_value(assessment, id));
  return report;
}

Result<ConfidenceReport> propagate(const SpecificationStructure& structure, const CaseSet& cases,
                                   const AssessmentMap& assessment, const ConfidenceOptions& options) {
  auto engine = ConfidenceEngine::create(structure, cases, options);
  if (!engine) return engine.diagnostics();
  if (auto bad = engine->check_assessment(assessment); !bad.empty()) return bad;
  return engine->evaluate(assessment);
}

std::string_view to_string(ValueChange::Scope scope) noexcept {
  switch (scope) {
    case ValueChange::Scope::guarantee:
      return "guarantee";
    case ValueChange::Scope::assumption:
      return "assumption";
    case ValueChange::Scope::module:
      return "module";
    case ValueChange::Scope::node:
      return "node";
  }
  return "node";
}

std::vector<ValueChange> diff_reports(const ConfidenceReport& before, const ConfidenceReport& after) {
  std::vector<ValueChange> out;
  auto scan = [&](ValueChange::Scope scope, const std::map<std::string, TriValue>& a,
                  const std::map<std::string, TriValue>& b) {
    for (const auto& [key, old_value] : a) {
      const auto it = b.find(key);
      const auto new_value = it == b.end() ? TriValue::unknown() : it->second;
      if (old_value != new_value) out.push_back({scope, key, old_value, new_value});
    }
  };
  scan(ValueChange::Scope::guarantee, before.guarantees, after.guarantees);
  scan(ValueChange::Scope::assumption, before.assumptions, after.assumptions);
  scan(ValueChange::Scope::module, before.modules, after.modules);
  scan(ValueChange::Scope::node, before.nodes, after.nodes);
  return out;
}

Result<std::vector<ValueChange>> what_if(const SpecificationStructure& structure, const CaseSet& cases,
                                         const AssessmentMap& assessment, const AssessmentMap& overrides,
                                         const ConfidenceOptions& options) {
  auto engine = ConfidenceEngine::create(structure, cases, options);
  if (!engine) return engine.diagnostics();
  Diagnostics bad = engine->check_assessment(assessment);
  for (const auto& [key, value] : overrides)
    if (!engine->is_leaf(key)) bad.push_back(make_error("E601", "what-if override key " + key + " not found"));
  if (!bad.empty()) return bad;

  auto merged = assessment;
  for (const auto& [key, value] : overrides) merged.insert_or_assign(key, value);
  return diff_reports(engine->evaluate(assessment), engine->evaluate(merged));
}

Result<std::vector<std::string>> weakest_links(const SpecificationStructure& structure, const CaseSet& cases,
                                               const AssessmentMap& assessment, const QualifiedId& guarantee,
                                               const ConfidenceOptions& options) {
  if (structure.find_contract(guarantee) == nullptr)
    return make_error("E602", "unknown guarantee " + guarantee.str());
  auto engine = ConfidenceEngine::create(structure, cases, options);
  if (!engine) return engine.diagnostics();
  if (auto bad = engine->check_assessment(assessment); !bad.empty()) return bad;

  const auto key = guarantee.str();
  const auto baseline = engine->evaluate(assessment).guarantees.at(key);
  std::vector<std::string> out;
  for (const auto& leaf : engine->leaves()) {
    if (engine->leaf_value(assessment, leaf) == TriValue::supported()) continue;
    auto raised = assessment;
    raised.insert_or_assign(leaf, TriValue::supported());
    if (engine->evaluate(raised).guarantees.at(key) > baseline) out.push_back(leaf);
  }
  return out;
}

}  // namespace contractcase
