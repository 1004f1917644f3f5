#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string_view>

namespace contractcase {

/// Three-valued confidence, totally ordered Contradicted < Unknown < Supported.
///
/// Meet (`&&`) is the minimum and join (`||`) the maximum under that order,
/// which coincides with strong-Kleene conjunction and disjunction when
/// Contradicted is read as false and Supported as true.
class TriValue {
 public:
  enum class Level : std::uint8_t { contradicted = 0, unknown = 1, supported = 2 };

  constexpr TriValue() noexcept = default;
  constexpr TriValue(Level level) noexcept : level_(level) {}  // NOLINT(google-explicit-constructor)

  static constexpr TriValue contradicted() noexcept { return Level::contradicted; }
  static constexpr TriValue unknown() noexcept { return Level::unknown; }
  static constexpr TriValue supported() noexcept { return Level::supported; }

  constexpr Level level() const noexcept { return level_; }

  friend constexpr bool operator==(TriValue, TriValue) noexcept = default;
  friend constexpr auto operator<=>(TriValue a, TriValue b) noexcept { return a.level_ <=> b.level_; }

  friend constexpr TriValue meet(TriValue a, TriValue b) noexcept { return a < b ? a : b; }
  friend constexpr TriValue join(TriValue a, TriValue b) noexcept { return a < b ? b : a; }
  friend constexpr TriValue operator&&(TriValue a, TriValue b) noexcept { return meet(a, b); }
  friend constexpr TriValue operator||(TriValue a, TriValue b) noexcept { return join(a, b); }

  /// "Supported" / "Unknown" / "Contradicted".
  std::string_view name() const noexcept;
  /// "supported" / "unknown" / "contradicted", the file-format token.
  std::string_view token() const noexcept;

  static std::optional<TriValue> from_token(std::string_view token) noexcept;

 private:
  Level level_ = Level::unknown;
};

std::ostream& operator<<(std::ostream& os, TriValue value);

}  // namespace contractcase
