#include "contractcase/diagnostic.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace contractcase {

std::string_view to_string(Severity severity) noexcept {
  switch (severity) {
    case Severity::error:
      return "error";
    case Severity::warning:
      return "warning";
    case Severity::info:
      return "info";
  }
  return "error";
}

Diagnostic make_error(std::string code, std::string message, SourceLocation location) {
  return {Severity::error, std::move(code), std::move(location), std::move(message)};
}

Diagnostic make_warning(std::string code, std::string message, SourceLocation location) {
  return {Severity::warning, std::move(code), std::move(location), std::move(message)};
}

bool has_errors(const Diagnostics& diagnostics) noexcept {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) { return d.is_error(); });
}

std::size_t count_errors(const Diagnostics& diagnostics) noexcept {
  return static_cast<std::size_t>(
      std::count_if(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) { return d.is_error(); }));
}

void sort_and_dedupe(Diagnostics& diagnostics) {
  auto key = [](const Diagnostic& d) {
    return std::tie(d.location.file, d.location.line, d.code, d.location.column, d.message);
  };
  std::stable_sort(diagnostics.begin(), diagnostics.end(),
                   [&](const Diagnostic& a, const Diagnostic& b) { return key(a) < key(b); });
  diagnostics.erase(std::unique(diagnostics.begin(), diagnostics.end()), diagnostics.end());
}

std::string format_diagnostic(const Diagnostic& d) {
  std::ostringstream os;
  if (!d.location.file.empty()) os << d.location.file << ':';
  if (d.location.known()) os << d.location.line << ':' << d.location.column << ':';
  if (!d.location.file.empty() || d.location.known()) os << ' ';
  os << to_string(d.severity) << '[' << d.code << "]: " << d.message;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Diagnostic& diagnostic) {
  return os << format_diagnostic(diagnostic);
}

}  // namespace contractcase
