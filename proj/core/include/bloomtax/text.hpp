#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bloomtax::text {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);

// Lowercase, trim, and join interior whitespace runs with a single '_'
// ("Roll  Up" -> "roll_up"), the on-disk WNDB lemma spelling.
std::string normalize_lemma(std::string_view s);

// Inverse of normalize_lemma for display: underscores become spaces.
std::string display_lemma(std::string_view lemma);

std::vector<std::string_view> split_whitespace(std::string_view s);
std::vector<std::string_view> split_char(std::string_view s, char sep);

}  // namespace bloomtax::text
