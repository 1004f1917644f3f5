#pragma once

#include "contractcase/case_files.hpp"
#include "contractcase/case_model.hpp"
#include "contractcase/confidence.hpp"
#include "contractcase/spec_model.hpp"

namespace cctest {

/// Test oracle for propagation. Written against the evaluation rules
/// directly: cycles are found through a transitive closure rather than
/// Tarjan, and values come from one global descending iteration rather than
/// a planned order. Expects an instance that passes propagate's prerequisites.
contractcase::ConfidenceReport reference_propagate(const contractcase::SpecificationStructure& structure,
                                                   const contractcase::CaseSet& cases,
                                                   const contractcase::AssessmentMap& assessment);

}  // namespace cctest
