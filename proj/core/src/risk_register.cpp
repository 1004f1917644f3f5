#include "contractcase/risk_register.hpp"

#include <algorithm>
#include <set>

#include "text_util.hpp"

namespace contractcase {

std::string_view to_string(PromptKind kind) noexcept {
  return kind == PromptKind::contract_question ? "contract_question" : "refinement_question";
}

std::string_view to_string(RiskStatus status) noexcept {
  switch (status) {
    case RiskStatus::open:
      return "open";
    case RiskStatus::mitigated:
      return "mitigated";
    case RiskStatus::accepted:
      return "accepted";
    case RiskStatus::no_risk_found:
      return "no_risk_found";
  }
  return "open";
}

std::optional<RiskStatus> risk_status_from_string(std::string_view text) noexcept {
  for (auto s : {RiskStatus::open, RiskStatus::mitigated, RiskStatus::accepted, RiskStatus::no_risk_found})
    if (to_string(s) == text) return s;
  return std::nullopt;
}

std::vector<RiskPrompt> generate_checklist(const SpecificationStructure& structure) {
  std::vector<RiskPrompt> out;
  for (const auto& target : assurance_targets(structure)) {
    RiskPrompt prompt;
    prompt.target = target;
    if (target.kind == Target::Kind::contract) {
      const auto* contract = structure.find_contract(*QualifiedId::parse(target.ref));
      prompt.kind = PromptKind::contract_question;
      prompt.text = "Contract " + target.ref + " (\"" + contract->guarantee_statement + "\"): " +
                    std::string(kContractQuestion);
    } else {
      const auto* refinement = structure.find_refinement(target.ref);
      std::vector<std::string> bindings;
      for (const auto& b : refinement->bindings) bindings.push_back(b.source.str() + " -> " + b.target.str());
      prompt.kind = PromptKind::refinement_question;
      prompt.text = "Refinement " + target.ref + " (" + detail::join(bindings, ", ") + "): " +
                    std::string(kRefinementQuestion);
    }
    out.push_back(std::move(prompt));
  }
  return out;
}

Diagnostics check_register(const SpecificationStructure& structure, const RiskRegister& risks) {
  Diagnostics out;
  std::set<std::string> requirement_ids;
  for (const auto& r : risks.requirements) {
    requirement_ids.insert(r.id);
    if (!target_exists(structure, r.concerns))
      out.push_back(make_error("R101", "safety requirement " + r.id + " concerns unknown target " + r.concerns.ref,
                               r.location));
  }
  for (const auto& item : risks.items) {
    if (!target_exists(structure, item.target))
      out.push_back(
          make_error("R101", "risk item " + item.id + " targets unknown " + std::string(to_string(item.target.kind)) +
                                 " " + item.target.ref,
                     item.location));
    for (const auto& m : item.mitigations)
      if (requirement_ids.count(m) == 0)
        out.push_back(make_error("R104", "risk item " + item.id + " names unknown mitigation " + m, item.location));
  }
  sort_and_dedupe(out);
  return out;
}

Coverage coverage(const SpecificationStructure& structure, const RiskRegister& risks) {
  Coverage out;
  out.diagnostics = check_register(structure, risks);

  std::set<Target> assessed;
  for (const auto& item : risks.items) {
    if (!target_exists(structure, item.target)) continue;
    assessed.insert(item.target);
    ++out.by_status[item.status];
  }
  for (const auto& target : assurance_targets(structure)) {
    ++out.total;
    if (assessed.count(target) != 0)
      ++out.covered;
    else
      out.uncovered.push_back(target);
  }
  return out;
}

Diagnostics trace_safety_requirements(const RiskRegister& risks, const CaseSet& cases) {
  Diagnostics out;
  for (const auto& requirement : risks.requirements) {
    const auto modules = cases.for_target(requirement.concerns);
    if (modules.empty()) {
      out.push_back(make_error("R201",
                               "safety requirement " + requirement.id + " is not traced: no assurance module for " +
                                   requirement.concerns.ref,
                               requirement.location));
      continue;
    }
    const auto tagged = [&](const AssuranceModule* m) {
      return std::any_of(m->nodes.begin(), m->nodes.end(), [&](const ArgumentNode& n) {
        return n.kind == NodeKind::claim && std::find(n.requirement_tags.begin(), n.requirement_tags.end(),
                                                      requirement.id) != n.requirement_tags.end();
      });
    };
    if (!std::any_of(modules.begin(), modules.end(), tagged))
      out.push_back(make_error("R201",
                               "safety requirement " + requirement.id + " is not traced: module " + modules.front()->id +
                                   " has no claim tagged " + requirement.id,
                               requirement.location));
  }
  sort_and_dedupe(out);
  return out;
}

}  // namespace contractcase
