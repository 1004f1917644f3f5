#pragma once

#include <cstddef>
#include <vector>

#include "contractcase/diagnostic.hpp"
#include "contractcase/spec_model.hpp"

namespace contractcase {

struct ValidationOptions {
  /// V202 becomes a warning.
  bool allow_multi_discharge = false;
  /// V301 becomes a warning.
  bool tolerate_cycles = false;
};

struct ValidationStats {
  std::size_t components = 0;
  std::size_t contracts = 0;
  std::size_t assumptions = 0;
  std::size_t refinements = 0;
  std::size_t bindings = 0;
  std::size_t environmental = 0;

  friend bool operator==(const ValidationStats&, const ValidationStats&) = default;
};

struct ValidationReport {
  Diagnostics findings;
  ValidationStats stats;

  bool ok() const noexcept { return !has_errors(findings); }
};

ValidationStats compute_stats(const SpecificationStructure& structure);

/// V201 undischarged non-environmental assumption, V202 assumption discharged
/// by more than one binding.
Diagnostics check_discharge(const SpecificationStructure& structure, const ValidationOptions& options = {});

/// Cyclic strongly connected components of the support graph over assumes and
/// binding edges, members sorted. Delegation edges carry no support and are
/// left out; inheritance cycles are check_inheritance's concern.
std::vector<std::vector<QualifiedId>> support_cycles(const SpecificationStructure& structure);

/// V301 per support cycle.
Diagnostics check_cycles(const SpecificationStructure& structure, const ValidationOptions& options = {});

/// V401 per binding whose source or target component is neither the
/// refinement's allocated component nor one of its direct children.
Diagnostics check_allocation(const SpecificationStructure& structure);

/// V501 inherits link to a contract not on an ancestor component, V502
/// inheritance cycle. Links on a cycle are reported only as V502.
Diagnostics check_inheritance(const SpecificationStructure& structure);

/// Every check, deduplicated and sorted by (file, line, code).
ValidationReport validate_all(const SpecificationStructure& structure, const ValidationOptions& options = {});

}  // namespace contractcase
