#pragma once

#include <filesystem>
#include <string>

#include "contractcase/diagnostic.hpp"
#include "contractcase/spec_model.hpp"

namespace contractcase {

struct SourceText {
  std::string path;
  std::string content;
};

/// Reads a whole file; E001 when it cannot be opened.
Result<SourceText> read_source(const std::filesystem::path& path);

struct ParseOptions {
  /// Attach every assumption of a component to each of its contracts,
  /// ignoring the written assumes lists.
  bool coarse = false;
};

/// Parses the specification language:
///
///   component Ferry "optional description" parent Fleet {
///     assumption Ai "statement" environmental
///     contract G1 "guarantee" assumes [Ai] inherits Fleet.G1 uncertainty "note"
///   }
///   refinement R1 allocated Ferry {
///     bind Deployer.G1 -> MPCS.A1
///   }
///
/// '#' starts a comment. Syntax errors (E10x) are reported with recovery so a
/// file with several independent mistakes yields several diagnostics; when the
/// syntax is clean the structure invariants (E2xx) are checked instead.
Result<SpecificationStructure> parse_spec(const SourceText& source, const ParseOptions& options = {});

/// Canonical text: components in declaration order then refinements, two-space
/// indentation, one declaration per line, blank line between blocks.
std::string serialize_spec(const SpecificationStructure& structure);

}  // namespace contractcase
