#include "reference.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>

namespace cc = contractcase;
using cc::TriValue;

namespace cctest {
namespace {

// A quantity is "M:<module>", "E:<contract qid>" or "A:<assumption qid>".
class Oracle {
 public:
  Oracle(const cc::SpecificationStructure& s, const cc::CaseSet& c, const cc::AssessmentMap& a)
      : structure_(s), cases_(c), assessment_(a) {
    for (const auto& m : cases_.modules()) add("M:" + m.id);
    for (const auto& q : structure_.contract_ids()) add("E:" + q.str());
    for (const auto& q : structure_.assumption_ids())
      if (!structure_.find_assumption(q)->environmental) add("A:" + q.str());

    const auto n = names_.size();
    reach_.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& d : inputs(names_[i])) reach_[i][id_.at(d)] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (reach_[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (reach_[k][j]) reach_[i][j] = true;
  }

  cc::ConfidenceReport run() {
    solve();
    cc::ConfidenceReport report;
    std::set<std::vector<std::string>> cycles;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const auto& name = names_[i];
      const auto v = values_[i];
      const auto key = name.substr(2);
      if (name[0] == 'M') {
        report.modules[key] = v;
        const auto* m = cases_.find(key);
        auto nodes = module_nodes(*m);
        for (const auto& [node, nv] : nodes) report.nodes[key + "." + node] = nv;
      } else if (name[0] == 'E') {
        report.guarantees[key] = v;
      } else {
        report.assumptions[key] = v;
      }
      if (reach_[i][i]) {
        std::vector<std::string> labels;
        for (std::size_t j = 0; j < names_.size(); ++j)
          if (same_scc(i, j)) labels.push_back(label(names_[j]));
        std::sort(labels.begin(), labels.end());
        cycles.insert(labels);
      }
    }
    for (const auto& q : structure_.assumption_ids())
      if (structure_.find_assumption(q)->environmental) report.assumptions[q.str()] = environmental(q.str());
    report.cycles.assign(cycles.begin(), cycles.end());
    return report;
  }

 private:
  void add(const std::string& name) {
    id_.emplace(name, names_.size());
    names_.push_back(name);
  }

  static std::string label(const std::string& name) {
    return name[0] == 'M' ? "module:" + name.substr(2) : name.substr(2);
  }

  bool same_scc(std::size_t a, std::size_t b) const { return a == b ? reach_[a][a] : reach_[a][b] && reach_[b][a]; }

  TriValue environmental(const std::string& qid) const {
    const auto it = assessment_.find(qid);
    return it == assessment_.end() ? TriValue::supported() : it->second;
  }

  // Quantity an away node citing `module_id` reads.
  std::string away_source(const std::string& module_id) const {
    const auto* cited = cases_.find(module_id);
    if (cited->target.kind == cc::Target::Kind::contract) return "E:" + cited->target.ref;
    return "M:" + module_id;
  }

  std::optional<std::string> module_quantity(const cc::Target& target) const {
    const auto modules = cases_.for_target(target);
    if (modules.empty()) return std::nullopt;
    return "M:" + modules.front()->id;
  }

  std::vector<std::string> inputs(const std::string& name) const {
    std::vector<std::string> out;
    const auto key = name.substr(2);
    if (name[0] == 'M') {
      for (const auto& node : cases_.find(key)->nodes)
        if (node.kind == cc::NodeKind::away) out.push_back(away_source(node.away_target));
    } else if (name[0] == 'E') {
      const auto qid = *cc::QualifiedId::parse(key);
      if (auto m = module_quantity(cc::Target::contract(qid))) out.push_back(*m);
      for (const auto& a : structure_.find_contract(qid)->assumes) {
        const cc::QualifiedId aid{qid.component, a};
        if (!structure_.find_assumption(aid)->environmental) out.push_back("A:" + aid.str());
      }
    } else {
      for (const auto& r : structure_.refinements())
        for (const auto& b : r.bindings)
          if (b.target.str() == key) {
            if (auto m = module_quantity(cc::Target::refinement(r.id))) out.push_back(*m);
            out.push_back("E:" + b.source.str());
          }
    }
    return out;
  }

  TriValue read(const std::string& name) const { return values_[id_.at(name)]; }

  // Descending iteration over every quantity at once, starting from the top
  // (Unknown for quantities on a cycle). Converges to the greatest solution.
  void solve() {
    values_.assign(names_.size(), TriValue::supported());
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (reach_[i][i]) values_[i] = TriValue::unknown();
    for (bool changed = true; changed;) {
      std::vector<TriValue> next(names_.size());
      for (std::size_t i = 0; i < names_.size(); ++i) next[i] = compute(i);
      changed = next != values_;
      values_ = std::move(next);
    }
  }

  std::map<std::string, TriValue> module_nodes(const cc::AssuranceModule& m) const {
    std::map<std::string, TriValue> memo;
    std::function<TriValue(const std::string&)> node_value = [&](const std::string& node_id) {
      if (const auto it = memo.find(node_id); it != memo.end()) return it->second;
      const auto* node = m.find(node_id);
      TriValue v = TriValue::unknown();
      switch (node->kind) {
        case cc::NodeKind::evidence: {
          const auto it = assessment_.find(m.leaf_key(*node));
          if (it != assessment_.end()) v = it->second;
          break;
        }
        case cc::NodeKind::away:
          v = read(away_source(node->away_target));
          break;
        case cc::NodeKind::inference:
          v = TriValue::supported();
          for (const auto& c : node->children) v = std::min(v, node_value(c));
          break;
        case cc::NodeKind::claim:
          if (!node->children.empty()) {
            v = TriValue::contradicted();
            for (const auto& c : node->children) v = std::max(v, node_value(c));
          }
          break;
      }
      memo[node_id] = v;
      return v;
    };
    for (const auto& node : m.nodes) node_value(node.id);
    return memo;
  }

  TriValue compute(std::size_t i) const {
    const auto& name = names_[i];
    const auto key = name.substr(2);
    TriValue v;
    if (name[0] == 'M') {
      const auto* m = cases_.find(key);
      v = module_nodes(*m).at(m->top);
    } else if (name[0] == 'E') {
      const auto qid = *cc::QualifiedId::parse(key);
      const auto m = module_quantity(cc::Target::contract(qid));
      v = m ? read(*m) : TriValue::unknown();
      for (const auto& a : structure_.find_contract(qid)->assumes) {
        const cc::QualifiedId aid{qid.component, a};
        v = std::min(v, structure_.find_assumption(aid)->environmental ? environmental(aid.str())
                                                                         : read("A:" + aid.str()));
      }
    } else {
      std::optional<TriValue> best;
      for (const auto& r : structure_.refinements())
        for (const auto& b : r.bindings)
          if (b.target.str() == key) {
            const auto m = module_quantity(cc::Target::refinement(r.id));
            const auto via = std::min(m ? read(*m) : TriValue::unknown(), read("E:" + b.source.str()));
            best = best ? std::max(*best, via) : via;
          }
      v = best.value_or(TriValue::unknown());
    }
    if (reach_[i][i]) v = std::min(v, TriValue::unknown());
    return v;
  }

  const cc::SpecificationStructure& structure_;
  const cc::CaseSet& cases_;
  const cc::AssessmentMap& assessment_;
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> id_;
  std::vector<std::vector<bool>> reach_;
  std::vector<TriValue> values_;
};

}  // namespace

cc::ConfidenceReport reference_propagate(const cc::SpecificationStructure& structure, const cc::CaseSet& cases,
                                         const cc::AssessmentMap& assessment) {
  return Oracle(structure, cases, assessment).run();
}

}  // namespace cctest
