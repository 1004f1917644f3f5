#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "contractcase/case_files.hpp"
#include "contractcase/case_model.hpp"
#include "contractcase/diagnostic.hpp"
#include "contractcase/spec_model.hpp"
#include "contractcase/tri_value.hpp"
#include "contractcase/validator.hpp"

namespace contractcase {

struct ConfidenceOptions {
  bool tolerate_cycles = false;
  bool allow_multi_discharge = false;
  bool strict_inference = false;

  ValidationOptions validation() const { return {allow_multi_discharge, tolerate_cycles}; }
  CaseCheckOptions case_checks() const { return {strict_inference, tolerate_cycles}; }
};

/// Node id -> value for one module.
using NodeValues = std::map<std::string, TriValue, std::less<>>;

/// Evaluates one well-formed module bottom-up:
///   evidence   assessed value of "<module>.<node>", default Unknown
///   away       away_values[cited module], default Unknown
///   inference  minimum over children (jointly necessary premises)
///   claim      maximum over children (alternative legs); Unknown when it has none
NodeValues evaluate_module(const AssuranceModule& module, const AssessmentMap& assessment,
                           const std::map<std::string, TriValue, std::less<>>& away_values);

struct ConfidenceReport {
  /// "<module>.<node>" for every argument node.
  std::map<std::string, TriValue> nodes;
  /// Module id -> value of its top claim (after the cycle cap).
  std::map<std::string, TriValue> modules;
  /// Contract qid -> end-to-end confidence.
  std::map<std::string, TriValue> guarantees;
  /// Assumption qid -> confidence that it holds.
  std::map<std::string, TriValue> assumptions;
  /// Circular-support groups that were capped at Unknown. Members are contract
  /// and assumption qids and "module:<id>" entries, sorted.
  std::vector<std::vector<std::string>> cycles;

  friend bool operator==(const ConfidenceReport&, const ConfidenceReport&) = default;
};

/// Precomputed evaluation plan for one (structure, case set) pair. Holds
/// references: both must outlive the engine.
///
/// End-to-end confidence of guarantee g:
///   e2e(g) = min(module(g), min over a in assumes(g) of av(a))
///   av(a)  = assessed value, default Supported       (environmental a)
///          = max over bindings (r, s) discharging a
///              of min(module(r), e2e(s))             (otherwise)
/// An away claim citing a contract's module carries e2e of that contract; one
/// citing a refinement's module carries that module's value. Quantities that
/// depend on each other circularly take the greatest solution of their
/// equations that stays at or below Unknown.
class ConfidenceEngine {
 public:
  /// E501 (plus the blocking findings) unless validation and case checks
  /// report no errors under `options`.
  static Result<ConfidenceEngine> create(const SpecificationStructure& structure, const CaseSet& cases,
                                         const ConfidenceOptions& options = {});

  /// Evidence keys and environmental assumption qids, sorted.
  const std::vector<std::string>& leaves() const noexcept { return leaves_; }
  bool is_leaf(std::string_view key) const;
  /// Assessed value, or the default for that kind of leaf.
  TriValue leaf_value(const AssessmentMap& assessment, std::string_view key) const;

  /// E502 for assessment keys that are not leaves.
  Diagnostics check_assessment(const AssessmentMap& assessment) const;

  /// Total; unknown keys are ignored.
  ConfidenceReport evaluate(const AssessmentMap& assessment) const;

 private:
  enum class VertexKind { module, guarantee, assumption };
  struct Vertex {
    VertexKind kind;
    std::string key;  // module id or qid
  };

  ConfidenceEngine(const SpecificationStructure& structure, const CaseSet& cases);
  std::size_t vertex_of(VertexKind kind, const std::string& key) const;

  const SpecificationStructure* structure_;
  const CaseSet* cases_;
  std::vector<Vertex> vertices_;
  std::map<std::pair<VertexKind, std::string>, std::size_t> index_;
  Adjacency depends_on_;
  std::vector<std::vector<std::size_t>> order_;  // condensation, dependencies first
  std::vector<bool> cyclic_;                     // per entry of order_
  std::vector<std::string> leaves_;
  std::vector<std::string> environmental_;
};

/// Checks prerequisites and unknown assessment keys, then evaluates.
Result<ConfidenceReport> propagate(const SpecificationStructure& structure, const CaseSet& cases,
                                   const AssessmentMap& assessment, const ConfidenceOptions& options = {});

struct ValueChange {
  enum class Scope { guarantee, assumption, module, node };

  Scope scope;
  std::string key;
  TriValue before;
  TriValue after;

  friend bool operator==(const ValueChange&, const ValueChange&) = default;
};

std::string_view to_string(ValueChange::Scope scope) noexcept;

/// Entries whose value differs between two reports, ordered by scope then key.
std::vector<ValueChange> diff_reports(const ConfidenceReport& before, const ConfidenceReport& after);

/// Evaluates `assessment` with `overrides` applied on top and returns what
/// changed relative to `assessment` alone. E601 for override keys that are
/// not leaves.
Result<std::vector<ValueChange>> what_if(const SpecificationStructure& structure, const CaseSet& cases,
                                         const AssessmentMap& assessment, const AssessmentMap& overrides,
                                         const ConfidenceOptions& options = {});

/// Leaves whose improvement to Supported, on its own, strictly raises
/// e2e(guarantee). Sorted. E602 when `guarantee` names no contract.
Result<std::vector<std::string>> weakest_links(const SpecificationStructure& structure, const CaseSet& cases,
                                               const AssessmentMap& assessment, const QualifiedId& guarantee,
                                               const ConfidenceOptions& options = {});

}  // namespace contractcase
