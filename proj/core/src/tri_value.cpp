#include "contractcase/tri_value.hpp"

namespace contractcase {

std::string_view TriValue::name() const noexcept {
  switch (level_) {
    case Level::contradicted:
      return "Contradicted";
    case Level::unknown:
      return "Unknown";
    case Level::supported:
      return "Supported";
  }
  return "Unknown";
}

std::string_view TriValue::token() const noexcept {
  switch (level_) {
    case Level::contradicted:
      return "contradicted";
    case Level::unknown:
      return "unknown";
    case Level::supported:
      return "supported";
  }
  return "unknown";
}

std::optional<TriValue> TriValue::from_token(std::string_view token) noexcept {
  if (token == "supported") return supported();
  if (token == "unknown") return unknown();
  if (token == "contradicted") return contradicted();
  return std::nullopt;
}

std::ostream& operator<<(std::ostream& os, TriValue value) { return os << value.name(); }

}  // namespace contractcase
