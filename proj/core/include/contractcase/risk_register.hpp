#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contractcase/case_model.hpp"
#include "contractcase/diagnostic.hpp"
#include "contractcase/spec_model.hpp"

namespace contractcase {

/// Asked of every contract.
inline constexpr std::string_view kContractQuestion =
    "Is there any way that the guarantee could not hold even if all assumptions are true?";

/// Asked of every refinement.
inline constexpr std::string_view kRefinementQuestion =
    "Is there any way that the refinement could be invalid, i.e. that the independent guarantee or assumption "
    "can be true while at the same time the dependent assumption is not?";

enum class PromptKind { contract_question, refinement_question };

std::string_view to_string(PromptKind kind) noexcept;

struct RiskPrompt {
  Target target;
  PromptKind kind = PromptKind::contract_question;
  std::string text;
};

/// One contract question per contract (lexicographic), then one refinement
/// question per refinement (lexicographic).
std::vector<RiskPrompt> generate_checklist(const SpecificationStructure& structure);

enum class RiskStatus { open, mitigated, accepted, no_risk_found };

std::string_view to_string(RiskStatus status) noexcept;
std::optional<RiskStatus> risk_status_from_string(std::string_view text) noexcept;

struct RiskItem {
  std::string id;
  Target target;
  std::string description;
  RiskStatus status = RiskStatus::open;
  std::vector<std::string> mitigations;  // safety requirement ids
  std::vector<std::string> references;   // e.g. control-structure documents, stored verbatim
  SourceLocation location;
};

struct SafetyRequirement {
  std::string id;
  std::string text;
  Target concerns;
  SourceLocation location;
};

struct RiskRegister {
  std::vector<RiskItem> items;
  std::vector<SafetyRequirement> requirements;
};

/// R101 item or requirement whose target does not exist, R104 mitigation
/// naming an unknown requirement.
Diagnostics check_register(const SpecificationStructure& structure, const RiskRegister& risks);

struct Coverage {
  std::size_t covered = 0;
  std::size_t total = 0;
  std::vector<Target> uncovered;
  std::map<RiskStatus, std::size_t> by_status;
  /// check_register findings; dangling items do not count towards coverage.
  Diagnostics diagnostics;

  double fraction() const noexcept { return total == 0 ? 1.0 : static_cast<double>(covered) / static_cast<double>(total); }
};

/// A checklist target is covered once any register item (whatever its
/// status) targets it.
Coverage coverage(const SpecificationStructure& structure, const RiskRegister& risks);

/// R201 for every safety requirement whose target's assurance module has no
/// claim tagged with the requirement id.
Diagnostics trace_safety_requirements(const RiskRegister& risks, const CaseSet& cases);

}  // namespace contractcase
