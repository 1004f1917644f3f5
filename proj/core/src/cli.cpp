#include "contractcase/cli.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "contractcase/case_files.hpp"
#include "contractcase/confidence.hpp"
#include "contractcase/report.hpp"
#include "contractcase/risk_register.hpp"
#include "contractcase/spec_dsl.hpp"
#include "contractcase/validator.hpp"
#include "text_util.hpp"

namespace contractcase {

std::optional<ColorMode> color_mode_from_string(const std::string& text) {
  if (text == "auto") return ColorMode::automatic;
  if (text == "always") return ColorMode::always;
  if (text == "never") return ColorMode::never;
  return std::nullopt;
}

namespace {

// Markdown table cell: pipes would split the cell, newlines end the row.
std::string table_cell(std::string_view text) {
  std::string out;
  for (const char c : text) {
    if (c == '|')
      out += "\\|";
    else if (c == '\n' || c == '\r')
      out += ' ';
    else
      out += c;
  }
  return out;
}

// Usage or IO failure; maps to exit status 2.
struct UsageError {
  std::string message;
};

class Painter {
 public:
  explicit Painter(bool enabled) : enabled_(enabled) {}

  std::string severity(Severity s) const {
    const auto word = std::string(to_string(s));
    if (!enabled_) return word;
    return (s == Severity::error ? "\033[31m" : s == Severity::warning ? "\033[33m" : "\033[36m") + word + "\033[0m";
  }

  std::string value(TriValue v) const {
    const auto word = std::string(v.name());
    if (!enabled_) return word;
    const char* color = v == TriValue::supported() ? "\033[32m" : v == TriValue::unknown() ? "\033[33m" : "\033[31m";
    return color + word + "\033[0m";
  }

  std::string finding(const Diagnostic& d) const {
    if (!enabled_) return format_diagnostic(d);
    auto plain = d;
    const auto text = format_diagnostic(plain);
    const auto word = std::string(to_string(d.severity));
    const auto at = text.find(word + "[");
    return at == std::string::npos ? text : text.substr(0, at) + severity(d.severity) + text.substr(at + word.size());
  }

 private:
  bool enabled_;
};

void append(Diagnostics& to, const Diagnostics& from) { to.insert(to.end(), from.begin(), from.end()); }

class Session {
 public:
  Session(const RunConfig& config, std::ostream& err, bool terminal)
      : config_(config),
        err_(err),
        paint_(config.color == ColorMode::always ||
               (config.color == ColorMode::automatic && terminal && !config.output)) {}

  int run(std::ostream& out) {
    switch (config_.command) {
      case Command::check:
        return check(out);
      case Command::risks:
        return risks(out);
      case Command::case_check:
        return case_check(out);
      case Command::confidence:
        return confidence(out);
      case Command::export_dot:
        return dot(out);
      case Command::report:
        return report(out);
    }
    return kExitUsage;
  }

 private:
  bool json() const { return config_.format == OutputFormat::json; }

  ValidationOptions validation_options() const { return {config_.allow_multi_discharge, config_.tolerate_cycles}; }
  CaseCheckOptions case_options() const { return {config_.strict_inference, config_.tolerate_cycles}; }
  ConfidenceOptions confidence_options() const {
    return {config_.tolerate_cycles, config_.allow_multi_discharge, config_.strict_inference};
  }

  static SourceText read(const std::string& path) {
    auto source = read_source(path);
    if (!source) throw UsageError{source.diagnostics().front().message};
    return std::move(source).value();
  }

  static const std::string& required(const std::optional<std::string>& value, const char* flag) {
    if (!value) throw UsageError{std::string("missing required option ") + flag};
    return *value;
  }

  // Null when the spec does not parse; its diagnostics land in `findings`.
  std::optional<SpecificationStructure> load_spec(Diagnostics& findings) {
    auto parsed = parse_spec(read(config_.spec), {config_.coarse});
    if (!parsed) {
      append(findings, parsed.diagnostics());
      return std::nullopt;
    }
    return std::move(parsed).value();
  }

  std::optional<CaseSet> load_cases(Diagnostics& findings) {
    auto loaded = load_case_set(required(config_.cases, "--cases"));
    if (!loaded) {
      const auto& d = loaded.diagnostics();
      if (d.size() == 1 && d.front().code == "E305") throw UsageError{d.front().message};
      append(findings, d);
      return std::nullopt;
    }
    return std::move(loaded).value();
  }

  std::optional<RiskRegister> load_register(Diagnostics& findings) {
    auto parsed = parse_register(read(*config_.risk_register));
    if (!parsed) {
      append(findings, parsed.diagnostics());
      return std::nullopt;
    }
    return std::move(parsed).value();
  }

  std::optional<AssessmentMap> load_assessment(Diagnostics& findings) {
    auto parsed = parse_assessment(read(required(config_.assessment, "--assessment")));
    if (!parsed) {
      append(findings, parsed.diagnostics());
      return std::nullopt;
    }
    return std::move(parsed).value();
  }

  AssessmentMap parse_overrides() const {
    AssessmentMap overrides;
    for (const auto& entry : config_.what_if) {
      const auto eq = entry.rfind('=');
      if (eq == std::string::npos || eq == 0) throw UsageError{"--what-if expects KEY=VALUE, got '" + entry + "'"};
      const auto value = TriValue::from_token(entry.substr(eq + 1));
      if (!value)
        throw UsageError{"--what-if value must be supported, unknown or contradicted, got '" + entry.substr(eq + 1) +
                         "'"};
      overrides.insert_or_assign(entry.substr(0, eq), *value);
    }
    return overrides;
  }

  void print_findings(std::ostream& out, const Diagnostics& findings) const {
    for (const auto& f : findings) out << paint_.finding(f) << '\n';
  }

  static std::string summary(const Diagnostics& findings) {
    const auto errors = count_errors(findings);
    return std::to_string(errors) + " error(s), " + std::to_string(findings.size() - errors) + " warning(s)";
  }

  static int status(const Diagnostics& findings) { return has_errors(findings) ? kExitFindings : kExitClean; }

  static Json findings_json(const Diagnostics& findings) {
    Json j;
    j["errors"] = count_errors(findings);
    j["warnings"] = findings.size() - count_errors(findings);
    j["findings"] = to_json(findings);
    return j;
  }

  static std::string stats_line(const ValidationStats& s) {
    std::ostringstream os;
    os << s.components << " components, " << s.contracts << " contracts, " << s.assumptions << " assumptions ("
       << s.environmental << " environmental), " << s.refinements << " refinements, " << s.bindings << " bindings";
    return os.str();
  }

  int check(std::ostream& out) {
    Diagnostics findings;
    const auto spec = load_spec(findings);
    std::optional<ValidationStats> stats;
    if (spec) {
      auto report = validate_all(*spec, validation_options());
      append(findings, report.findings);
      stats = report.stats;
    }
    sort_and_dedupe(findings);

    if (json()) {
      Json j;
      j["command"] = "check";
      j["stats"] = stats ? to_json(*stats) : Json(nullptr);
      j.update(findings_json(findings));
      out << j.dump(2) << '\n';
    } else {
      print_findings(out, findings);
      if (stats) out << stats_line(*stats) << '\n';
      out << summary(findings) << '\n';
    }
    return status(findings);
  }

  int risks(std::ostream& out) {
    Diagnostics findings;
    const auto spec = load_spec(findings);
    std::vector<RiskPrompt> prompts;
    std::optional<Coverage> cov;
    if (spec) {
      prompts = generate_checklist(*spec);
      if (config_.risk_register) {
        if (const auto reg = load_register(findings)) {
          cov = coverage(*spec, *reg);
          append(findings, cov->diagnostics);
        }
      }
    }
    sort_and_dedupe(findings);

    if (json()) {
      Json j;
      j["command"] = "risks";
      j["prompts"] = to_json(prompts);
      j["coverage"] = cov ? to_json(*cov) : Json(nullptr);
      j.update(findings_json(findings));
      out << j.dump(2) << '\n';
    } else {
      print_findings(out, findings);
      for (const auto& p : prompts) out << "[" << p.target.ref << "] " << prompt_text(*spec, p) << '\n';
      if (cov) {
        out << "coverage " << cov->covered << '/' << cov->total << '\n';
        for (const auto& t : cov->uncovered) out << "uncovered " << t.ref << '\n';
        for (const auto& [s, n] : cov->by_status) out << "status " << to_string(s) << ' ' << n << '\n';
      }
      if (!findings.empty()) out << summary(findings) << '\n';
    }
    return status(findings);
  }

  // Checklist text with the guarantee statement shortened for terminals.
  static std::string prompt_text(const SpecificationStructure& spec, const RiskPrompt& p) {
    if (p.kind != PromptKind::contract_question) return p.text;
    const auto* k = spec.find_contract(*QualifiedId::parse(p.target.ref));
    return "Contract " + p.target.ref + " (\"" + detail::truncate_utf8(k->guarantee_statement, kLabelLimit) +
           "\"): " + std::string(kContractQuestion);
  }

  struct CaseOutcome {
    Diagnostics findings;
    std::optional<ModuleGraph> graph;
    std::size_t modules = 0;
  };

  CaseOutcome run_case_checks(const SpecificationStructure& spec, const CaseSet& cases,
                              const std::optional<RiskRegister>& reg) const {
    CaseOutcome outcome;
    outcome.modules = cases.modules().size();
    append(outcome.findings, check_case(spec, cases, case_options()));
    outcome.graph = link_away_claims(spec, cases, case_options()).graph;
    if (reg) {
      append(outcome.findings, check_register(spec, *reg));
      append(outcome.findings, trace_safety_requirements(*reg, cases));
    }
    return outcome;
  }

  int case_check(std::ostream& out) {
    Diagnostics findings;
    const auto spec = load_spec(findings);
    required(config_.cases, "--cases");
    CaseOutcome outcome;
    if (spec) {
      const auto cases = load_cases(findings);
      std::optional<RiskRegister> reg;
      if (config_.risk_register) reg = load_register(findings);
      if (cases && (reg || !config_.risk_register)) {
        outcome = run_case_checks(*spec, *cases, reg);
        append(findings, outcome.findings);
      }
    }
    sort_and_dedupe(findings);

    if (json()) {
      Json j;
      j["command"] = "case";
      j["modules"] = outcome.modules;
      j["module_graph"] = outcome.graph ? to_json(*outcome.graph) : Json(nullptr);
      j.update(findings_json(findings));
      out << j.dump(2) << '\n';
    } else {
      print_findings(out, findings);
      out << outcome.modules << " modules, " << summary(findings) << '\n';
    }
    return status(findings);
  }

  int confidence(std::ostream& out) {
    Diagnostics findings;
    const auto spec = load_spec(findings);
    required(config_.cases, "--cases");
    required(config_.assessment, "--assessment");
    const auto overrides = parse_overrides();

    std::optional<ConfidenceReport> report;
    std::optional<std::vector<ValueChange>> changes;
    std::optional<std::vector<std::string>> weakest;
    if (spec) {
      const auto cases = load_cases(findings);
      const auto assessment = load_assessment(findings);
      if (cases && assessment) {
        const auto options = confidence_options();
        if (auto r = propagate(*spec, *cases, *assessment, options)) {
          report = std::move(r).value();
          if (!config_.what_if.empty()) {
            if (auto d = what_if(*spec, *cases, *assessment, overrides, options))
              changes = std::move(d).value();
            else
              append(findings, d.diagnostics());
          }
          if (config_.weakest) {
            const auto qid = QualifiedId::parse(*config_.weakest);
            auto w = qid ? weakest_links(*spec, *cases, *assessment, *qid, options)
                         : Result<std::vector<std::string>>(make_error("E602", "unknown guarantee " + *config_.weakest));
            if (w)
              weakest = std::move(w).value();
            else
              append(findings, w.diagnostics());
          }
        } else {
          append(findings, r.diagnostics());
        }
      }
    }
    sort_and_dedupe(findings);

    if (json()) {
      Json j;
      j["command"] = "confidence";
      j["report"] = report ? to_json(*report) : Json(nullptr);
      if (!config_.what_if.empty()) j["what_if"] = changes ? to_json(*changes) : Json(nullptr);
      if (config_.weakest) {
        Json w;
        w["guarantee"] = *config_.weakest;
        w["leaves"] = weakest ? Json(*weakest) : Json(nullptr);
        j["weakest"] = std::move(w);
      }
      j.update(findings_json(findings));
      out << j.dump(2) << '\n';
      return status(findings);
    }

    print_findings(out, findings);
    if (report) print_confidence(out, *spec, *report);
    if (changes) {
      if (changes->empty()) out << "what-if: no changes\n";
      for (const auto& c : *changes)
        out << "what-if " << to_string(c.scope) << ' ' << c.key << ": " << paint_.value(c.before) << " -> "
            << paint_.value(c.after) << '\n';
    }
    if (weakest) {
      out << "weakest links for " << *config_.weakest << ':';
      if (weakest->empty()) out << " none";
      out << '\n';
      for (const auto& leaf : *weakest) out << "  " << leaf << '\n';
    }
    if (!findings.empty()) out << summary(findings) << '\n';
    return status(findings);
  }

  void print_confidence(std::ostream& out, const SpecificationStructure& spec, const ConfidenceReport& report) const {
    std::size_t width = 0;
    for (const auto& [g, v] : report.guarantees) width = std::max(width, g.size());
    for (const auto& [g, v] : report.guarantees) {
      const auto* k = spec.find_contract(*QualifiedId::parse(g));
      out << std::left << std::setw(static_cast<int>(width)) << g << "  " << paint_.value(v);
      out << std::string(13 - v.name().size(), ' ')
          << detail::truncate_utf8(k->guarantee_statement, kLabelLimit) << '\n';
    }
    for (const auto& cycle : report.cycles) out << "capped cycle: " << detail::join(cycle, ", ") << '\n';
  }

  int dot(std::ostream& out) {
    Diagnostics findings;
    const auto spec = load_spec(findings);
    if (!spec) {
      print_findings(err_, findings);
      return kExitFindings;
    }
    out << export_dot(*spec, {config_.by_component});
    return kExitClean;
  }

  int report(std::ostream& out) {
    Diagnostics all;
    Diagnostics spec_findings;
    const auto spec = load_spec(spec_findings);
    append(all, spec_findings);

    std::optional<ValidationReport> validation;
    if (spec) {
      validation = validate_all(*spec, validation_options());
      append(all, validation->findings);
    }

    std::optional<RiskRegister> reg;
    Diagnostics reg_findings;
    std::optional<Coverage> cov;
    if (config_.risk_register && spec) {
      reg = load_register(reg_findings);
      if (reg) {
        cov = coverage(*spec, *reg);
        append(reg_findings, cov->diagnostics);
      }
      append(all, reg_findings);
    }

    std::optional<CaseSet> cases;
    Diagnostics case_findings;
    std::optional<CaseOutcome> outcome;
    if (config_.cases && spec) {
      cases = load_cases(case_findings);
      if (cases) {
        outcome = run_case_checks(*spec, *cases, std::nullopt);
        append(case_findings, outcome->findings);
        if (reg) append(case_findings, trace_safety_requirements(*reg, *cases));
      }
      append(all, case_findings);
    }

    std::optional<ConfidenceReport> conf;
    Diagnostics conf_findings;
    if (config_.assessment && cases) {
      if (const auto assessment = load_assessment(conf_findings)) {
        if (auto r = propagate(*spec, *cases, *assessment, confidence_options()))
          conf = std::move(r).value();
        else
          append(conf_findings, r.diagnostics());
      }
      append(all, conf_findings);
    }
    for (auto* d : {&spec_findings, &reg_findings, &case_findings, &conf_findings}) sort_and_dedupe(*d);
    sort_and_dedupe(all);
    Diagnostics validation_findings = spec_findings;
    if (validation) append(validation_findings, validation->findings);

    const bool risks_given = config_.risk_register && spec;
    const bool cases_given = config_.cases && spec;
    const bool confidence_given = config_.assessment && cases;

    if (json()) {
      Json j;
      j["command"] = "report";
      j["statistics"] = validation ? to_json(validation->stats) : Json(nullptr);
      j["validation"] = findings_json(validation_findings);
      if (risks_given) {
        Json r;
        r["coverage"] = cov ? to_json(*cov) : Json(nullptr);
        r.update(findings_json(reg_findings));
        j["risk_coverage"] = std::move(r);
      } else {
        j["risk_coverage"] = "not provided";
      }
      if (cases_given) {
        Json c;
        c["modules"] = cases ? cases->modules().size() : 0;
        c.update(findings_json(case_findings));
        j["assurance_case"] = std::move(c);
      } else {
        j["assurance_case"] = "not provided";
      }
      if (confidence_given) {
        Json c;
        c["report"] = conf ? to_json(*conf) : Json(nullptr);
        c.update(findings_json(conf_findings));
        j["confidence"] = std::move(c);
      } else {
        j["confidence"] = "not provided";
      }
      j["errors"] = count_errors(all);
      out << j.dump(2) << '\n';
      return status(all);
    }

    auto section_findings = [&](const Diagnostics& findings) {
      if (findings.empty()) {
        out << "No findings.\n";
        return;
      }
      for (const auto& f : findings) out << "- `" << format_diagnostic(f) << "`\n";
    };

    out << "# Assurance report\n\n## Statistics\n\n";
    if (validation) {
      const auto& s = validation->stats;
      out << "| item | count |\n|---|---|\n";
      out << "| components | " << s.components << " |\n| contracts | " << s.contracts << " |\n| assumptions | "
          << s.assumptions << " |\n| environmental assumptions | " << s.environmental << " |\n| refinements | "
          << s.refinements << " |\n| bindings | " << s.bindings << " |\n";
    } else {
      out << "Specification did not parse.\n";
    }

    out << "\n## Validation\n\n";
    section_findings(validation_findings);

    out << "\n## Risk coverage\n\n";
    if (!risks_given) {
      out << "not provided\n";
    } else {
      if (cov) {
        out << "coverage " << cov->covered << '/' << cov->total << "\n\n";
        for (const auto& t : cov->uncovered) out << "- uncovered: " << t.ref << '\n';
        if (!cov->uncovered.empty()) out << '\n';
      }
      section_findings(reg_findings);
    }

    out << "\n## Assurance case\n\n";
    if (!cases_given) {
      out << "not provided\n";
    } else {
      if (cases) out << cases->modules().size() << " modules\n\n";
      section_findings(case_findings);
    }

    out << "\n## Confidence\n\n";
    if (!confidence_given) {
      out << "not provided\n";
    } else if (conf) {
      out << "| guarantee | confidence | statement |\n|---|---|---|\n";
      for (const auto& [g, v] : conf->guarantees)
        out << "| " << g << " | " << v.name() << " | "
            << table_cell(detail::truncate_utf8(spec->find_contract(*QualifiedId::parse(g))->guarantee_statement,
                                                kLabelLimit))
            << " |\n";
      for (const auto& cycle : conf->cycles) out << "\ncapped cycle: " << detail::join(cycle, ", ") << '\n';
      if (!conf_findings.empty()) {
        out << '\n';
        section_findings(conf_findings);
      }
    } else {
      section_findings(conf_findings);
    }
    return status(all);
  }

  const RunConfig& config_;
  std::ostream& err_;
  Painter paint_;
};

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err, bool out_is_terminal) {
  try {
    Session session(config, err, out_is_terminal);
    if (!config.output) return session.run(out);

    std::ostringstream buffer;
    const int code = session.run(buffer);
    std::ofstream file(*config.output, std::ios::binary);
    if (!file) throw UsageError{"cannot write output file " + *config.output};
    file << buffer.str();
    return code;
  } catch (const UsageError& e) {
    err << "contractcase: " << e.message << '\n';
    return kExitUsage;
  }
}

}  // namespace contractcase
