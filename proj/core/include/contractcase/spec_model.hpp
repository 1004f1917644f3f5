#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "contractcase/diagnostic.hpp"

namespace contractcase {

/// `component "." local`, e.g. MPCS.G1.
struct QualifiedId {
  std::string component;
  std::string local;

  std::string str() const { return component + "." + local; }

  /// Splits at the first '.'; nullopt unless both halves are identifiers.
  static std::optional<QualifiedId> parse(std::string_view text);

  friend bool operator==(const QualifiedId&, const QualifiedId&) = default;
  friend auto operator<=>(const QualifiedId& a, const QualifiedId& b) { return a.str() <=> b.str(); }
};

/// Letter followed by letters, digits or underscores.
bool is_identifier(std::string_view text) noexcept;

struct Assumption {
  std::string id;
  std::string statement;
  bool environmental = false;

  friend bool operator==(const Assumption&, const Assumption&) = default;
};

struct Contract {
  std::string id;
  std::string guarantee_statement;
  std::optional<std::string> uncertainty_note;
  std::vector<std::string> assumes;
  std::optional<QualifiedId> inherits;

  friend bool operator==(const Contract&, const Contract&) = default;
};

struct ComponentDecl {
  std::string name;
  std::string description;
  std::optional<std::string> parent;
  std::vector<Assumption> assumptions;
  std::vector<Contract> contracts;

  friend bool operator==(const ComponentDecl&, const ComponentDecl&) = default;
};

struct Binding {
  QualifiedId source;  // contract
  QualifiedId target;  // assumption

  friend bool operator==(const Binding&, const Binding&) = default;
};

struct Refinement {
  std::string id;
  std::string allocated_to;
  std::vector<Binding> bindings;

  friend bool operator==(const Refinement&, const Refinement&) = default;
};

/// Where each declaration came from. Keys: component name, qualified id of a
/// contract or assumption, "refinement:<id>", "binding:<id>#<index>".
/// Locations never take part in structural equality.
class SourceMap {
 public:
  void set(std::string key, SourceLocation location) { entries_[std::move(key)] = std::move(location); }
  SourceLocation find(const std::string& key) const;

  static std::string refinement_key(std::string_view id);
  static std::string binding_key(std::string_view refinement, std::size_t index);

 private:
  std::map<std::string, SourceLocation> entries_;
};

class SpecificationStructure;

using Element = std::variant<const Contract*, const Assumption*>;

/// Contract-based-design specification structure: components with their
/// contracts and assumptions, plus the refinements that bind guarantees to
/// dependent assumptions. Only obtainable through build_structure, which
/// enforces every local invariant; immutable afterwards.
class SpecificationStructure {
 public:
  SpecificationStructure() = default;

  std::span<const ComponentDecl> components() const noexcept { return components_; }
  std::span<const Refinement> refinements() const noexcept { return refinements_; }
  const SourceMap& locations() const noexcept { return locations_; }

  const ComponentDecl* find_component(std::string_view name) const;
  const Contract* find_contract(const QualifiedId& id) const;
  const Assumption* find_assumption(const QualifiedId& id) const;
  const Refinement* find_refinement(std::string_view id) const;

  /// Ancestors of `component`, nearest first.
  std::vector<std::string> ancestors(std::string_view component) const;
  /// Direct children in declaration order.
  std::vector<std::string> children(std::string_view component) const;

  /// All contract qids, lexicographic.
  std::vector<QualifiedId> contract_ids() const;
  /// All assumption qids, lexicographic.
  std::vector<QualifiedId> assumption_ids() const;

  std::size_t contract_count() const noexcept;
  std::size_t assumption_count() const noexcept;
  std::size_t binding_count() const noexcept;

  /// Structural equality: declarations only, locations ignored.
  friend bool operator==(const SpecificationStructure& a, const SpecificationStructure& b) {
    return a.components_ == b.components_ && a.refinements_ == b.refinements_;
  }

 private:
  friend Result<SpecificationStructure> build_structure(std::vector<ComponentDecl>, std::vector<Refinement>,
                                                        SourceMap);

  std::vector<ComponentDecl> components_;
  std::vector<Refinement> refinements_;
  SourceMap locations_;
  std::map<std::string, std::size_t, std::less<>> component_index_;
};

/// Checks every type invariant and returns either the structure or the full
/// list of violations (codes E2xx).
Result<SpecificationStructure> build_structure(std::vector<ComponentDecl> components,
                                               std::vector<Refinement> refinements, SourceMap locations = {});

/// Looks up a contract or assumption; on failure the diagnostic (E250) names
/// the qid and the nearest existing qid.
Result<Element> resolve(const SpecificationStructure& structure, const QualifiedId& qid);

/// Unit of risk assessment and assurance: a contract (by qualified id) or a
/// refinement (by id).
struct Target {
  enum class Kind { contract, refinement };

  Kind kind = Kind::contract;
  std::string ref;

  /// "MPCS.G2" is a contract, "R2" a refinement.
  static Target from_string(std::string_view text);
  static Target contract(const QualifiedId& id) { return {Kind::contract, id.str()}; }
  static Target refinement(std::string_view id) { return {Kind::refinement, std::string(id)}; }

  const std::string& str() const noexcept { return ref; }

  friend bool operator==(const Target&, const Target&) = default;
  friend auto operator<=>(const Target&, const Target&) = default;
};

std::string_view to_string(Target::Kind kind) noexcept;

bool target_exists(const SpecificationStructure& structure, const Target& target);

/// Every contract (lexicographic) followed by every refinement (lexicographic).
std::vector<Target> assurance_targets(const SpecificationStructure& structure);

enum class ElementKind { contract, assumption };
enum class SupportEdgeKind {
  assumes,     // assumption -> contract whose assumes lists it
  binding,     // contract -> assumption discharged by a refinement binding
  delegation,  // inherited contract -> inheriting contract
};

std::string_view to_string(SupportEdgeKind kind) noexcept;

struct SupportNode {
  QualifiedId id;
  ElementKind kind;

  friend bool operator==(const SupportNode&, const SupportNode&) = default;
};

struct SupportEdge {
  std::size_t from;
  std::size_t to;
  SupportEdgeKind kind;
  std::string refinement;  // binding edges only

  friend bool operator==(const SupportEdge&, const SupportEdge&) = default;
};

/// Contracts and assumptions with the edges implied by assumes lists,
/// refinement bindings and inheritance. Nodes are sorted by qualified id;
/// edges by (from, to, kind, refinement).
struct SupportGraph {
  std::vector<SupportNode> nodes;
  std::vector<SupportEdge> edges;

  std::optional<std::size_t> index_of(const QualifiedId& id) const;
};

SupportGraph support_graph(const SpecificationStructure& structure);

}  // namespace contractcase
