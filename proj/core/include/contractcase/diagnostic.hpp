#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace contractcase {

enum class Severity { error, warning, info };

std::string_view to_string(Severity severity) noexcept;

/// 1-based position in a source file. `line == 0` means "no position"; an
/// empty `file` means the finding was derived from an in-memory object.
struct SourceLocation {
  std::string file;
  std::size_t line = 0;
  std::size_t column = 0;

  bool known() const noexcept { return line != 0; }

  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
  friend auto operator<=>(const SourceLocation&, const SourceLocation&) = default;
};

struct Diagnostic {
  Severity severity = Severity::error;
  std::string code;
  SourceLocation location;
  std::string message;

  bool is_error() const noexcept { return severity == Severity::error; }

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

using Diagnostics = std::vector<Diagnostic>;

Diagnostic make_error(std::string code, std::string message, SourceLocation location = {});
Diagnostic make_warning(std::string code, std::string message, SourceLocation location = {});

bool has_errors(const Diagnostics& diagnostics) noexcept;
std::size_t count_errors(const Diagnostics& diagnostics) noexcept;

/// Sorts by (file, line, code, column, message) and drops exact duplicates.
void sort_and_dedupe(Diagnostics& diagnostics);

/// "file:line:col: error[CODE]: message" (location parts omitted when absent).
std::string format_diagnostic(const Diagnostic& diagnostic);

std::ostream& operator<<(std::ostream& os, const Diagnostic& diagnostic);

/// Value-or-diagnostics. A failed result always carries at least one error.
template <class T>
class Result {
 public:
  Result(T value) : state_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Result(Diagnostics diagnostics) : state_(std::move(diagnostics)) {}  // NOLINT
  Result(Diagnostic diagnostic) : state_(Diagnostics{std::move(diagnostic)}) {}  // NOLINT

  bool ok() const noexcept { return state_.index() == 0; }
  explicit operator bool() const noexcept { return ok(); }

  const T& value() const& { return std::get<0>(state_); }
  T& value() & { return std::get<0>(state_); }
  T&& value() && { return std::get<0>(std::move(state_)); }

  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

  const Diagnostics& diagnostics() const& {
    static const Diagnostics kNone;
    return ok() ? kNone : std::get<1>(state_);
  }

 private:
  std::variant<T, Diagnostics> state_;
};

}  // namespace contractcase
