#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "figura/evidence.hpp"
#include "figura/pos.hpp"
#include "figura/text.hpp"

namespace figura {

struct MetaphorTriplet {
  std::string target;
  std::string source;
  std::string connector;
  PartOfSpeech pos = PartOfSpeech::adjective;
  // Required for verb and noun connectors, absent for adjectives.
  std::optional<EvidenceSentence> evidence;
};

struct GeneratedMetaphor {
  std::string id;
  MetaphorTriplet triplet;
  std::string template_id;
  std::string text;
  std::string comparison;                  // "T is like V"
  std::optional<std::string> explanation;  // clause taken from the evidence sentence
};

struct ExpressionForms {
  struct TwoRound {
    std::string prompt;
    std::string reveal;
  };
  std::string literal;
  std::string one_round;
  TwoRound two_round;
};

/// Named sentence patterns. Placeholders:
///   {T} target, {V} source, {ADJ} adjective connector, {CLAUSE} explanation
///   clause, {ART} the indefinite article for the source.
/// {ART} becomes "a" or "an" according to the word that follows it, and
/// disappears for mass nouns. The first letter of every rendering is
/// capitalised.
class TemplateSet {
 public:
  static constexpr std::string_view kJustLike = "just_like";
  static constexpr std::string_view kAsAs = "as_as";
  static constexpr std::string_view kLikeA = "like_a";
  static constexpr std::string_view kExplanation = "explanation";
  static constexpr std::string_view kComparison = "comparison";
  static constexpr std::string_view kPrompt = "prompt";
  static constexpr std::string_view kRevealAdjective = "reveal_adjective";
  static constexpr std::string_view kRevealClause = "reveal_clause";
  static constexpr std::string_view kLiteralAdjective = "literal_adjective";
  static constexpr std::string_view kLiteralClause = "literal_clause";

  static TemplateSet defaults();
  // "identifier = pattern" lines over the defaults; '#' comments allowed.
  static TemplateSet parse(std::istream& in);
  static TemplateSet parse_file(const std::string& path);

  bool has(std::string_view id) const;
  const std::string& pattern(std::string_view id) const;
  void set(std::string id, std::string pattern);

  static bool is_adjective_template(std::string_view id);

 private:
  std::map<std::string, std::string, std::less<>> patterns_;
};

struct ArticleRule {
  // Sources rendered without an article ("as complex as math").
  TokenSet mass_nouns;

  static ArticleRule defaults();
  // "", "a" or "an" for `noun`, agreeing with the word that follows the article.
  std::string_view article(std::string_view noun, std::string_view next_word) const;
};

struct Clause {
  std::string text;
  std::vector<std::size_t> tokens;  // positions in the evidence sentence
};

// The anchor's predicate with its dependents, minus the anchor's own subtree
// and any trailing punctuation.
Clause extract_clause(const EvidenceSentence& evidence, const RelationLabels& labels = {});

std::string make_metaphor_id(const MetaphorTriplet& triplet, std::string_view template_id);

class MetaphorRenderer {
 public:
  explicit MetaphorRenderer(TemplateSet templates = TemplateSet::defaults(),
                            ArticleRule articles = ArticleRule::defaults());

  GeneratedMetaphor render_adjective(const MetaphorTriplet& triplet,
                                     std::string_view template_id) const;
  // "T is like (a|an) V, CLAUSE." for verb and noun connectors.
  GeneratedMetaphor render_with_explanation(const MetaphorTriplet& triplet) const;
  ExpressionForms expression_forms(const GeneratedMetaphor& metaphor) const;

  struct Slots {
    std::string_view target;
    std::string_view source;
    std::string_view adjective;
    std::string_view clause;
  };
  std::string fill(std::string_view pattern, const Slots& slots) const;

  const TemplateSet& templates() const { return templates_; }
  const ArticleRule& articles() const { return articles_; }

 private:
  TemplateSet templates_;
  ArticleRule articles_;
};

}  // namespace figura
