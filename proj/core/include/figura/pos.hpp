#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace figura {

enum class PartOfSpeech { noun, adjective, verb, other };

std::string_view to_string(PartOfSpeech pos);
// Accepts "noun"/"adjective"/"verb"/"other", short forms ("n", "adj", "v")
// and Universal Dependencies tags (NOUN, PROPN, ADJ, VERB).
std::optional<PartOfSpeech> parse_pos(std::string_view text);

// True for the three categories that can carry a connecting word.
constexpr bool is_content_pos(PartOfSpeech pos) { return pos != PartOfSpeech::other; }

using PosTable = std::unordered_map<std::string, PartOfSpeech>;

}  // namespace figura
