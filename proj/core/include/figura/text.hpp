#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace figura {

using TokenSet = std::unordered_set<std::string>;

// ASCII-only case folding; bytes outside ASCII pass through untouched.
std::string to_lower(std::string_view text);
std::string capitalize_first(std::string text);

std::string_view trim(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char sep);
// Splits on runs of spaces and tabs.
std::vector<std::string_view> split_whitespace(std::string_view text);

std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

// Lowercased word tokens of a free-text utterance. Letters, digits, apostrophes
// and non-ASCII bytes form words; everything else separates them.
std::vector<std::string> tokenize_words(std::string_view text);

// One entry per line, first tab-separated field, '#' starts a comment line.
std::vector<std::string> read_word_list(std::istream& in, bool lowercase = true);
std::vector<std::string> read_word_list_file(const std::string& path, bool lowercase = true);
TokenSet read_word_set_file(const std::string& path, bool lowercase = true);

}  // namespace figura
