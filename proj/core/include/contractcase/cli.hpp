#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace contractcase {

enum class Command { check, risks, case_check, confidence, export_dot, report };
enum class OutputFormat { text, json };
enum class ColorMode { automatic, always, never };

/// Exit statuses shared by every command.
inline constexpr int kExitClean = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Command command = Command::check;
  std::string spec;
  std::optional<std::string> cases;
  std::optional<std::string> assessment;
  std::optional<std::string> risk_register;
  std::optional<std::string> output;
  OutputFormat format = OutputFormat::text;
  bool coarse = false;
  bool tolerate_cycles = false;
  bool allow_multi_discharge = false;
  bool strict_inference = false;
  bool by_component = false;
  std::vector<std::string> what_if;  // KEY=VALUE
  std::optional<std::string> weakest;
  ColorMode color = ColorMode::never;
};

/// Parses CONTRACTCASE_COLOR values; nullopt for anything else.
std::optional<ColorMode> color_mode_from_string(const std::string& text);

/// Runs one command. The report goes to `out` (or the -o file); usage and IO
/// problems go to `err`. Returns 0 without error findings, 1 with error
/// findings, 2 on usage or IO failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err, bool out_is_terminal = false);

}  // namespace contractcase
