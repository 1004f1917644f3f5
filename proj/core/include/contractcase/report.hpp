#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "contractcase/case_model.hpp"
#include "contractcase/confidence.hpp"
#include "contractcase/diagnostic.hpp"
#include "contractcase/risk_register.hpp"
#include "contractcase/spec_model.hpp"
#include "contractcase/validator.hpp"

namespace contractcase {

using Json = nlohmann::ordered_json;

/// Statements in labels and text reports are cut to this many characters.
inline constexpr std::size_t kLabelLimit = 60;

struct DotOptions {
  /// One node per component instead of one per contract.
  bool by_component = false;
};

/// Graphviz rendering of the specification structure: a box per contract
/// inside one cluster per component, a solid edge per refinement binding from
/// the supplying contract to each contract that assumes the bound assumption
/// (labeled with the assumption id), and a dashed edge per inheritance link
/// from the inherited contract to its heir. Declaration order throughout, so
/// the text is byte-identical across runs.
std::string export_dot(const SpecificationStructure& structure, const DotOptions& options = {});

Json to_json(const Diagnostic& diagnostic);
Json to_json(const Diagnostics& diagnostics);
Json to_json(const ValidationStats& stats);
Json to_json(const std::vector<RiskPrompt>& prompts);
Json to_json(const Coverage& coverage);
Json to_json(const ModuleGraph& graph);
Json to_json(const ConfidenceReport& report);
Json to_json(const std::vector<ValueChange>& changes);

}  // namespace contractcase
