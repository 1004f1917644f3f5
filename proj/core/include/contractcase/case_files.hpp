#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "contractcase/case_model.hpp"
#include "contractcase/diagnostic.hpp"
#include "contractcase/risk_register.hpp"
#include "contractcase/spec_dsl.hpp"
#include "contractcase/tri_value.hpp"

namespace contractcase {

/// Leaf id ("<module>.<evidence node>" or an environmental assumption's
/// qualified id) to assessed confidence. Ordered, so iteration is stable.
using AssessmentMap = std::map<std::string, TriValue, std::less<>>;

// The companion files are YAML documents (JSON is accepted as-is). Schemas
// are documented in docs/file-formats.md.

/// E300 malformed document, E301 duplicate node id, E302 child naming a
/// missing node, E303 unknown node kind. Away targets stay unresolved.
Result<std::vector<AssuranceModule>> parse_case_file(const SourceText& source);

/// Every *.yaml, *.yml and *.json file in `directory` in name order, or a
/// single file. E304 duplicate module id, E305 unreadable directory.
Result<CaseSet> load_case_set(const std::filesystem::path& directory);

/// E400 value other than supported/unknown/contradicted, E401 duplicate key.
Result<AssessmentMap> parse_assessment(const SourceText& source);

/// R100 malformed document, R102 unknown status, R103 mitigated item without
/// mitigations, R105 duplicate id.
Result<RiskRegister> parse_register(const SourceText& source);

}  // namespace contractcase
