// contractcase: command-line front end over the core library.
#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "contractcase/cli.hpp"

namespace cc = contractcase;

namespace {

struct Shared {
  std::string format = "text";
  bool coarse = false;
  bool tolerate_cycles = false;
  bool allow_multi_discharge = false;
  bool strict = false;
  std::string output;
};

void add_common(CLI::App* cmd, Shared& shared) {
  cmd->add_option("--format", shared.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_flag("--coarse", shared.coarse, "Every contract assumes all assumptions of its component");
  cmd->add_flag("--tolerate-cycles", shared.tolerate_cycles, "Report support cycles as warnings");
  cmd->add_flag("--allow-multi-discharge", shared.allow_multi_discharge,
                "Report multiply discharged assumptions as warnings");
  cmd->add_flag("--strict", shared.strict, "Claims may only be supported through inference steps");
  cmd->add_option("-o,--output", shared.output, "Write the report to PATH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contract-based specification checks, risk checklists and assurance-case confidence"};
  app.require_subcommand(1, 1);

  Shared shared;
  cc::RunConfig config;
  std::string cases, assessment, risk_register, weakest;

  auto* check = app.add_subcommand("check", "Parse and validate a specification");
  auto* risks = app.add_subcommand("risks", "Print the risk checklist and register coverage");
  auto* case_cmd = app.add_subcommand("case", "Check assurance-case modules against the specification");
  auto* confidence = app.add_subcommand("confidence", "Propagate confidence from assessed evidence");
  auto* dot = app.add_subcommand("export-dot", "Render the specification as a Graphviz graph");
  auto* report = app.add_subcommand("report", "Combined report over every given input");

  for (auto* cmd : {check, risks, case_cmd, confidence, dot, report}) {
    cmd->add_option("spec", config.spec, "Specification file")->required();
    add_common(cmd, shared);
  }
  risks->add_option("--register", risk_register, "Risk register file");
  case_cmd->add_option("--cases", cases, "Case module file or directory")->required();
  case_cmd->add_option("--register", risk_register, "Risk register file");
  confidence->add_option("--cases", cases, "Case module file or directory")->required();
  confidence->add_option("--assessment", assessment, "Leaf assessment file")->required();
  confidence->add_option("--what-if", config.what_if, "Override KEY=VALUE (repeatable)");
  confidence->add_option("--weakest", weakest, "List leaves limiting this guarantee");
  dot->add_flag("--by-component", config.by_component, "One node per component");
  report->add_option("--cases", cases, "Case module file or directory");
  report->add_option("--assessment", assessment, "Leaf assessment file");
  report->add_option("--register", risk_register, "Risk register file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cc::kExitUsage;
  }

  const std::map<CLI::App*, cc::Command> commands{
      {check, cc::Command::check},          {risks, cc::Command::risks},
      {case_cmd, cc::Command::case_check},  {confidence, cc::Command::confidence},
      {dot, cc::Command::export_dot},       {report, cc::Command::report},
  };
  config.command = commands.at(app.get_subcommands().front());
  config.format = shared.format == "json" ? cc::OutputFormat::json : cc::OutputFormat::text;
  config.coarse = shared.coarse;
  config.tolerate_cycles = shared.tolerate_cycles;
  config.allow_multi_discharge = shared.allow_multi_discharge;
  config.strict_inference = shared.strict;
  if (!shared.output.empty()) config.output = shared.output;
  if (!cases.empty()) config.cases = cases;
  if (!assessment.empty()) config.assessment = assessment;
  if (!risk_register.empty()) config.risk_register = risk_register;
  if (!weakest.empty()) config.weakest = weakest;

  config.color = cc::ColorMode::automatic;
  if (const char* env = std::getenv("CONTRACTCASE_COLOR")) {
    const auto mode = cc::color_mode_from_string(env);
    if (!mode) {
      std::cerr << "contractcase: CONTRACTCASE_COLOR must be auto, always or never\n";
      return cc::kExitUsage;
    }
    config.color = *mode;
  }

  return cc::run(config, std::cout, std::cerr, isatty(STDOUT_FILENO) != 0);
}
