#include "figura/pos.hpp"

#include "figura/text.hpp"

namespace figura {

std::string_view to_string(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::noun:
      return "noun";
    case PartOfSpeech::adjective:
      return "adjective";
    case PartOfSpeech::verb:
      return "verb";
    case PartOfSpeech::other:
      return "other";
  }
  return "other";
}

std::optional<PartOfSpeech> parse_pos(std::string_view text) {
  const std::string tag = to_lower(trim(text));
  if (tag == "noun" || tag == "n" || tag == "propn") return PartOfSpeech::noun;
  if (tag == "adjective" || tag == "adj" || tag == "a") return PartOfSpeech::adjective;
  if (tag == "verb" || tag == "v") return PartOfSpeech::verb;
  if (tag == "other" || tag == "x") return PartOfSpeech::other;
  return std::nullopt;
}

}  // namespace figura
