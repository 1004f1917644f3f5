#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace contractcase::detail {

std::size_t edit_distance(std::string_view a, std::string_view b);

/// Closest candidate by edit distance (ties: lexicographically first);
/// empty when there are no candidates or none is reasonably close.
std::string nearest(std::string_view needle, const std::vector<std::string>& candidates);

/// Counts UTF-8 code points; invalid sequences count one per byte.
std::size_t utf8_length(std::string_view text);

bool is_valid_utf8(std::string_view text, std::size_t* bad_offset = nullptr);

/// Keeps at most `limit` code points; longer text becomes the first
/// `limit - 3` code points followed by "...".
std::string truncate_utf8(std::string_view text, std::size_t limit);

std::string join(const std::vector<std::string>& parts, std::string_view separator);

}  // namespace contractcase::detail
