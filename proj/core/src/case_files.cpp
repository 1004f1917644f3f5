#include "contractcase/case_files.hpp"

#include <algorithm>
#include <set>

#include <yaml-cpp/yaml.h>

#include "text_util.hpp"

namespace contractcase {
namespace {

SourceLocation location_of(const std::string& file, const YAML::Mark& mark) {
  if (mark.is_null()) return {file, 0, 0};
  return {file, static_cast<std::size_t>(mark.line) + 1, static_cast<std::size_t>(mark.column) + 1};
}

// Schema-checked access to a YAML document. Every failed expectation becomes
// a diagnostic with the offending node's position under `malformed_code`.
class Reader {
 public:
  Reader(std::string file, std::string malformed_code, Diagnostics& diagnostics)
      : file_(std::move(file)), malformed_(std::move(malformed_code)), diagnostics_(diagnostics) {}

  SourceLocation where(const YAML::Node& node) const { return location_of(file_, node.Mark()); }

  void error(const std::string& code, std::string message, const YAML::Node& at) {
    diagnostics_.push_back(make_error(code, std::move(message), where(at)));
  }
  void malformed(std::string message, const YAML::Node& at) { error(malformed_, std::move(message), at); }

  bool require_map(const YAML::Node& node, const std::string& what) {
    if (node.IsMap()) return true;
    malformed(what + " must be a mapping", node);
    return false;
  }

  bool allowed_keys(const YAML::Node& map, std::initializer_list<std::string_view> keys, const std::string& what) {
    bool ok = true;
    for (const auto& entry : map) {
      const auto key = entry.first.Scalar();
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        malformed("unknown field '" + key + "' in " + what, entry.first);
        ok = false;
      }
    }
    return ok;
  }

  std::optional<std::string> string(const YAML::Node& map, const char* key, const std::string& what, bool required) {
    const auto node = map[key];
    if (!node) {
      if (required) malformed(what + " is missing field '" + key + "'", map);
      return std::nullopt;
    }
    if (!node.IsScalar()) {
      malformed(std::string("field '") + key + "' of " + what + " must be a string", node);
      return std::nullopt;
    }
    return node.Scalar();
  }

  std::vector<std::string> string_list(const YAML::Node& map, const char* key, const std::string& what) {
    std::vector<std::string> out;
    const auto node = map[key];
    if (!node || node.IsNull()) return out;
    if (!node.IsSequence()) {
      malformed(std::string("field '") + key + "' of " + what + " must be a list", node);
      return out;
    }
    for (const auto& item : node) {
      if (!item.IsScalar()) {
        malformed(std::string("entries of '") + key + "' in " + what + " must be strings", item);
        continue;
      }
      out.push_back(item.Scalar());
    }
    return out;
  }

  std::optional<bool> boolean(const YAML::Node& map, const char* key, const std::string& what) {
    const auto node = map[key];
    if (!node) return std::nullopt;
    bool value = false;
    if (!node.IsScalar() || !YAML::convert<bool>::decode(node, value)) {
      malformed(std::string("field '") + key + "' of " + what + " must be true or false", node);
      return std::nullopt;
    }
    return value;
  }

  const std::string& file() const { return file_; }

 private:
  std::string file_;
  std::string malformed_;
  Diagnostics& diagnostics_;
};

// Loads a document, reporting UTF-8 and YAML syntax problems under `code`.
std::optional<YAML::Node> load_document(const SourceText& source, const std::string& code, Diagnostics& diagnostics) {
  std::size_t bad = 0;
  if (!detail::is_valid_utf8(source.content, &bad)) {
    diagnostics.push_back(
        make_error("E000", "input is not valid UTF-8 (byte offset " + std::to_string(bad) + ")", {source.path, 0, 0}));
    return std::nullopt;
  }
  try {
    return YAML::Load(source.content);
  } catch (const YAML::ParserException& e) {
    diagnostics.push_back(make_error(code, "malformed document: " + e.msg, location_of(source.path, e.mark)));
  } catch (const YAML::Exception& e) {
    diagnostics.push_back(make_error(code, std::string("malformed document: ") + e.what(), {source.path, 0, 0}));
  }
  return std::nullopt;
}

std::optional<ArgumentNode> read_node(Reader& reader, const YAML::Node& yaml, const std::string& module_id) {
  const std::string what = "node in module " + module_id;
  if (!reader.require_map(yaml, what)) return std::nullopt;
  reader.allowed_keys(yaml, {"id", "kind", "text", "children", "target", "undeveloped", "requirements"}, what);

  ArgumentNode node;
  node.location = reader.where(yaml);
  const auto id = reader.string(yaml, "id", what, true);
  const auto kind = reader.string(yaml, "kind", what, true);
  if (!id || !kind) return std::nullopt;
  node.id = *id;
  const auto parsed_kind = node_kind_from_string(*kind);
  if (!parsed_kind) {
    reader.error("E303", "unknown node kind '" + *kind + "' for node " + node.id + " in module " + module_id,
                 yaml["kind"]);
    return std::nullopt;
  }
  node.kind = *parsed_kind;
  node.text = reader.string(yaml, "text", what, false).value_or("");
  node.children = reader.string_list(yaml, "children", what);

  const std::string label = "node " + node.id + " in module " + module_id;
  if (node.kind == NodeKind::away) {
    if (const auto target = reader.string(yaml, "target", label, true)) node.away_target = *target;
  } else if (yaml["target"]) {
    reader.malformed("only away nodes have a 'target' (" + label + ")", yaml["target"]);
  }
  if (node.kind == NodeKind::claim) {
    node.undeveloped = reader.boolean(yaml, "undeveloped", label).value_or(false);
    node.requirement_tags = reader.string_list(yaml, "requirements", label);
  } else {
    if (yaml["undeveloped"]) reader.malformed("only claims can be 'undeveloped' (" + label + ")", yaml["undeveloped"]);
    if (yaml["requirements"])
      reader.malformed("only claims carry 'requirements' (" + label + ")", yaml["requirements"]);
  }
  return node;
}

std::optional<AssuranceModule> read_module(Reader& reader, const YAML::Node& yaml, Diagnostics& diagnostics) {
  if (!reader.require_map(yaml, "module")) return std::nullopt;
  reader.allowed_keys(yaml, {"id", "target", "top", "nodes"}, "module");

  AssuranceModule module;
  module.location = reader.where(yaml);
  const auto id = reader.string(yaml, "id", "module", true);
  if (!id) return std::nullopt;
  module.id = *id;
  const std::string what = "module " + module.id;

  const auto target = yaml["target"];
  if (!target) {
    reader.malformed(what + " is missing field 'target'", yaml);
    return std::nullopt;
  }
  if (!reader.require_map(target, "target of " + what)) return std::nullopt;
  reader.allowed_keys(target, {"kind", "ref"}, "target of " + what);
  const auto kind = reader.string(target, "kind", "target of " + what, true);
  const auto ref = reader.string(target, "ref", "target of " + what, true);
  if (!kind || !ref) return std::nullopt;
  if (*kind == "contract") {
    if (!QualifiedId::parse(*ref)) {
      reader.malformed("contract target '" + *ref + "' of " + what + " is not a qualified id", target["ref"]);
      return std::nullopt;
    }
    module.target = {Target::Kind::contract, *ref};
  } else if (*kind == "refinement") {
    if (!is_identifier(*ref)) {
      reader.malformed("refinement target '" + *ref + "' of " + what + " is not an identifier", target["ref"]);
      return std::nullopt;
    }
    module.target = {Target::Kind::refinement, *ref};
  } else {
    reader.malformed("target kind of " + what + " must be 'contract' or 'refinement'", target["kind"]);
    return std::nullopt;
  }

  const auto nodes = yaml["nodes"];
  if (!nodes || !nodes.IsSequence() || nodes.size() == 0) {
    reader.malformed(what + " needs a non-empty 'nodes' list", nodes ? nodes : yaml);
    return std::nullopt;
  }
  const auto errors_before = count_errors(diagnostics);
  std::set<std::string> ids;
  for (const auto& n : nodes) {
    auto node = read_node(reader, n, module.id);
    if (!node) continue;
    if (!ids.insert(node->id).second) {
      diagnostics.push_back(make_error("E301", "duplicate node id " + node->id + " in " + what, node->location));
      continue;
    }
    module.nodes.push_back(std::move(*node));
  }

  module.top = module.nodes.empty() ? std::string{} : module.nodes.front().id;
  if (const auto top = reader.string(yaml, "top", what, false)) {
    module.top = *top;
    if (ids.count(*top) == 0)
      reader.error("E302", "top of " + what + " names missing node " + *top, yaml["top"]);
  }
  for (const auto& node : module.nodes)
    for (const auto& child : node.children)
      if (ids.count(child) == 0)
        diagnostics.push_back(make_error(
            "E302", "node " + node.id + " in " + what + " names missing child " + child, node.location));

  if (count_errors(diagnostics) != errors_before) return std::nullopt;
  return module;
}

}  // namespace

Result<std::vector<AssuranceModule>> parse_case_file(const SourceText& source) {
  Diagnostics diagnostics;
  const auto doc = load_document(source, "E300", diagnostics);
  if (!doc) return diagnostics;

  std::vector<AssuranceModule> modules;
  Reader reader(source.path, "E300", diagnostics);
  if (!doc->IsNull()) {
    if (reader.require_map(*doc, "case file") && reader.allowed_keys(*doc, {"modules"}, "case file")) {
      const auto list = (*doc)["modules"];
      if (!list) {
        reader.malformed("case file is missing 'modules'", *doc);
      } else if (!list.IsNull() && !list.IsSequence()) {
        reader.malformed("'modules' must be a list", list);
      } else if (list.IsSequence()) {
        for (const auto& m : list)
          if (auto module = read_module(reader, m, diagnostics)) modules.push_back(std::move(*module));
      }
    }
  }
  if (has_errors(diagnostics)) {
    sort_and_dedupe(diagnostics);
    return diagnostics;
  }
  return modules;
}

Result<CaseSet> load_case_set(const std::filesystem::path& directory) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  std::error_code ec;
  if (fs::is_regular_file(directory, ec)) {
    files.push_back(directory);
  } else if (fs::is_directory(directory, ec)) {
    for (const auto& entry : fs::directory_iterator(directory, ec)) {
      const auto ext = entry.path().extension().string();
      if (entry.is_regular_file() && (ext == ".yaml" || ext == ".yml" || ext == ".json")) files.push_back(entry.path());
    }
    if (ec) return make_error("E305", "cannot list case directory " + directory.string() + ": " + ec.message());
  } else {
    return make_error("E305", "cannot read case directory " + directory.string());
  }
  std::sort(files.begin(), files.end());

  Diagnostics diagnostics;
  std::vector<AssuranceModule> modules;
  std::map<std::string, SourceLocation> seen;
  for (const auto& file : files) {
    auto source = read_source(file);
    if (!source) {
      diagnostics.insert(diagnostics.end(), source.diagnostics().begin(), source.diagnostics().end());
      continue;
    }
    auto parsed = parse_case_file(*source);
    if (!parsed) {
      diagnostics.insert(diagnostics.end(), parsed.diagnostics().begin(), parsed.diagnostics().end());
      continue;
    }
    for (auto& module : std::move(parsed).value()) {
      if (const auto it = seen.find(module.id); it != seen.end()) {
        diagnostics.push_back(make_error("E304", "duplicate module id " + module.id, module.location));
        continue;
      }
      seen.emplace(module.id, module.location);
      modules.push_back(std::move(module));
    }
  }
  if (!diagnostics.empty()) {
    sort_and_dedupe(diagnostics);
    return diagnostics;
  }
  return CaseSet(std::move(modules));
}

Result<AssessmentMap> parse_assessment(const SourceText& source) {
  Diagnostics diagnostics;
  const auto doc = load_document(source, "E300", diagnostics);
  if (!doc) return diagnostics;

  AssessmentMap out;
  Reader reader(source.path, "E300", diagnostics);
  if (!doc->IsNull() && reader.require_map(*doc, "assessment")) {
    for (const auto& entry : *doc) {
      if (!entry.first.IsScalar() || !entry.second.IsScalar()) {
        reader.malformed("assessment entries must map a leaf id to a value", entry.first);
        continue;
      }
      const auto& key = entry.first.Scalar();
      const auto& token = entry.second.Scalar();
      const auto value = TriValue::from_token(token);
      if (!value) {
        reader.error("E400",
                     "unknown value '" + token + "' for " + key + " (expected supported, unknown or contradicted)",
                     entry.second);
        continue;
      }
      if (!out.emplace(key, *value).second) reader.error("E401", "duplicate assessment key " + key, entry.first);
    }
  }
  if (has_errors(diagnostics)) {
    sort_and_dedupe(diagnostics);
    return diagnostics;
  }
  return out;
}

Result<RiskRegister> parse_register(const SourceText& source) {
  Diagnostics diagnostics;
  const auto doc = load_document(source, "R100", diagnostics);
  if (!doc) return diagnostics;

  RiskRegister out;
  Reader reader(source.path, "R100", diagnostics);
  std::set<std::string> ids;
  auto unique = [&](const std::string& id, const YAML::Node& at) {
    if (!ids.insert(id).second) reader.error("R105", "duplicate register id " + id, at);
  };

  if (!doc->IsNull() && reader.require_map(*doc, "register")) {
    reader.allowed_keys(*doc, {"items", "requirements"}, "register");
    const auto items = (*doc)["items"];
    if (items && !items.IsNull() && !items.IsSequence()) reader.malformed("'items' must be a list", items);
    if (items && items.IsSequence()) {
      for (const auto& y : items) {
        if (!reader.require_map(y, "risk item")) continue;
        reader.allowed_keys(y, {"id", "target", "description", "status", "mitigations", "references"}, "risk item");
        const auto id = reader.string(y, "id", "risk item", true);
        const auto target = reader.string(y, "target", "risk item", true);
        const auto status = reader.string(y, "status", "risk item", true);
        if (!id || !target || !status) continue;
        RiskItem item;
        item.id = *id;
        item.target = Target::from_string(*target);
        item.description = reader.string(y, "description", "risk item " + *id, false).value_or("");
        item.mitigations = reader.string_list(y, "mitigations", "risk item " + *id);
        item.references = reader.string_list(y, "references", "risk item " + *id);
        item.location = reader.where(y);
        const auto parsed = risk_status_from_string(*status);
        if (!parsed) {
          reader.error("R102", "unknown status '" + *status + "' on risk item " + *id, y["status"]);
          continue;
        }
        item.status = *parsed;
        if (item.status == RiskStatus::mitigated && item.mitigations.empty())
          reader.error("R103", "risk item " + *id + " is mitigated but lists no mitigations", y);
        unique(item.id, y["id"]);
        out.items.push_back(std::move(item));
      }
    }

    const auto requirements = (*doc)["requirements"];
    if (requirements && !requirements.IsNull() && !requirements.IsSequence())
      reader.malformed("'requirements' must be a list", requirements);
    if (requirements && requirements.IsSequence()) {
      for (const auto& y : requirements) {
        if (!reader.require_map(y, "safety requirement")) continue;
        reader.allowed_keys(y, {"id", "text", "concerns"}, "safety requirement");
        const auto id = reader.string(y, "id", "safety requirement", true);
        const auto text = reader.string(y, "text", "safety requirement", true);
        const auto concerns = reader.string(y, "concerns", "safety requirement", true);
        if (!id || !text || !concerns) continue;
        unique(*id, y["id"]);
        out.requirements.push_back({*id, *text, Target::from_string(*concerns), reader.where(y)});
      }
    }
  }
  if (has_errors(diagnostics)) {
    sort_and_dedupe(diagnostics);
    return diagnostics;
  }
  return out;
}

}  // namespace contractcase
