#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contractcase/diagnostic.hpp"
#include "contractcase/graph.hpp"
#include "contractcase/spec_model.hpp"

namespace contractcase {

enum class NodeKind { claim, inference, evidence, away };

std::string_view to_string(NodeKind kind) noexcept;
std::optional<NodeKind> node_kind_from_string(std::string_view text) noexcept;

/// One step of a Toulmin-style argument.
struct ArgumentNode {
  std::string id;
  NodeKind kind = NodeKind::claim;
  std::string text;
  std::vector<std::string> children;          // claims and inferences
  std::string away_target;                    // away nodes: cited module id
  std::vector<std::string> requirement_tags;  // claims: safety requirements argued
  bool undeveloped = false;                   // claims only
  SourceLocation location;
};

/// Argument for exactly one contract or refinement. Away nodes cite the top
/// claim of another module.
struct AssuranceModule {
  std::string id;
  Target target;
  std::vector<ArgumentNode> nodes;
  std::string top;
  SourceLocation location;

  const ArgumentNode* find(std::string_view node_id) const;

  /// "<module>.<node>", the key evidence is assessed under.
  std::string leaf_key(const ArgumentNode& node) const { return id + "." + node.id; }
};

/// All modules of an assurance case, indexed by id and by target.
class CaseSet {
 public:
  CaseSet() = default;
  /// Later modules with an id already present are kept in `modules()` but
  /// not indexed by id.
  explicit CaseSet(std::vector<AssuranceModule> modules);

  const std::vector<AssuranceModule>& modules() const noexcept { return modules_; }
  const AssuranceModule* find(std::string_view module_id) const;
  /// Modules for a target, in file order.
  std::vector<const AssuranceModule*> for_target(const Target& target) const;
  /// The first module for a target, or null.
  const AssuranceModule* module_for(const Target& target) const;

 private:
  std::vector<AssuranceModule> modules_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
  std::map<Target, std::vector<std::size_t>> by_target_;
};

struct CaseCheckOptions {
  /// Claims must be supported through inference nodes only.
  bool strict_inference = false;
  /// Inter-module cycles are reported as warnings instead of errors.
  bool tolerate_cycles = false;
};

/// C101 target without module, C102 module with unknown target, C103 more
/// than one module per target.
Diagnostics check_module_coverage(const SpecificationStructure& structure, const CaseSet& cases);

/// C201 cycle, C202 unreachable node, C203 leaf claim not marked undeveloped,
/// C204 evidence/away with children, C205 top not a claim, C206 child of a
/// kind its parent may not have, C207 inference without children, C208
/// (strict) claim supported other than through inferences.
Diagnostics check_module_wellformed(const AssuranceModule& module, const CaseCheckOptions& options = {});

/// Module-level graph: one vertex per module (sorted by id), one edge per
/// resolved away node, from the citing module to the cited one.
struct ModuleGraph {
  std::vector<std::string> modules;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  Adjacency adjacency;
};

struct AwayLinks {
  ModuleGraph graph;
  Diagnostics diagnostics;
};

/// C301 dangling away target, C302 inherited contract's module lacks an away
/// claim on the inheriting contract's module, C303 inter-module cycle.
AwayLinks link_away_claims(const SpecificationStructure& structure, const CaseSet& cases,
                           const CaseCheckOptions& options = {});

/// Coverage, per-module well-formedness and away links, sorted.
Diagnostics check_case(const SpecificationStructure& structure, const CaseSet& cases,
                       const CaseCheckOptions& options = {});

}  // namespace contractcase
