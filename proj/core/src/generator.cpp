#include "figura/generator.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include <fmt/format.h>

#include "figura/error.hpp"

namespace figura {

TemplateSet TemplateSet::defaults() {
  TemplateSet set;
  set.patterns_ = {
      {std::string(kJustLike), "{T} is {ADJ}, just like {ART} {V}."},
      {std::string(kAsAs), "{T} is as {ADJ} as {ART} {V}."},
      {std::string(kLikeA), "{T} is like {ART} {ADJ} {V}."},
      {std::string(kExplanation), "{T} is like {ART} {V}, {CLAUSE}."},
      {std::string(kComparison), "{T} is like {ART} {V}"},
      {std::string(kPrompt), "I heard that {T} is like {ART} {V}. Do you know why?"},
      {std::string(kRevealAdjective), "Because both are {ADJ}."},
      {std::string(kRevealClause), "{CLAUSE}."},
      {std::string(kLiteralAdjective), "{T} is {ADJ}."},
      {std::string(kLiteralClause), "{T} {CLAUSE}."},
  };
  return set;
}

TemplateSet TemplateSet::parse(std::istream& in) {
  TemplateSet set = defaults();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw DataError(fmt::format("template line {} lacks 'identifier = pattern'", line_no));
    }
    const auto id = trim(body.substr(0, eq));
    const auto pattern = trim(body.substr(eq + 1));
    if (id.empty() || pattern.empty()) {
      throw DataError(fmt::format("empty template identifier or pattern at line {}", line_no));
    }
    set.set(std::string(id), std::string(pattern));
  }
  return set;
}

TemplateSet TemplateSet::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open template file " + path);
  return parse(in);
}

bool TemplateSet::has(std::string_view id) const { return patterns_.find(id) != patterns_.end(); }

const std::string& TemplateSet::pattern(std::string_view id) const {
  const auto it = patterns_.find(id);
  if (it == patterns_.end()) throw ParameterError(fmt::format("unknown template '{}'", id));
  return it->second;
}

void TemplateSet::set(std::string id, std::string pattern) {
  patterns_.insert_or_assign(std::move(id), std::move(pattern));
}

bool TemplateSet::is_adjective_template(std::string_view id) {
  return id == kJustLike || id == kAsAs || id == kLikeA;
}

ArticleRule ArticleRule::defaults() {
  return ArticleRule{{"math",      "mathematics", "salary",   "money",     "music",
                      "water",     "air",         "rice",     "bread",     "advice",
                      "information", "furniture", "homework", "sportswear", "luck",
                      "rain",      "snow",        "coffee",   "tea",       "milk",
                      "chocolate", "sand",        "gold",     "silver",    "weather",
                      "traffic",   "jewelry",     "news",     "food",      "sunshine"}};
}

std::string_view ArticleRule::article(std::string_view noun, std::string_view next_word) const {
  if (mass_nouns.contains(to_lower(noun))) return "";
  if (next_word.empty()) return "a";
  switch (next_word.front()) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
    case 'A': case 'E': case 'I': case 'O': case 'U':
      return "an";
    default:
      return "a";
  }
}

namespace {

constexpr char kArticleMark = '\x01';

bool attaches_left(std::string_view form) {
  static constexpr std::string_view kLeft[] = {",", ".", "!", "?", ";", ":", ")", "'s", "n't", "'re",
                                               "'ve", "'ll", "'d", "'m", "..."};
  return std::find(std::begin(kLeft), std::end(kLeft), form) != std::end(kLeft);
}

// Collapses runs of spaces, drops spaces before closing punctuation, trims.
std::string tidy(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == ' ' && (out.empty() || out.back() == ' ')) continue;
    if ((c == ',' || c == '.' || c == '?' || c == '!' || c == ';' || c == ':') && !out.empty() &&
        out.back() == ' ') {
      out.pop_back();
    }
    out.push_back(c);
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

bool is_punctuation(const DependencyToken& t, const RelationLabels& labels) {
  return t.upos == "PUNCT" || labels.punctuation.contains(t.deprel);
}

}  // namespace

Clause extract_clause(const EvidenceSentence& evidence, const RelationLabels& labels) {
  const auto& s = evidence.sentence;
  if (evidence.predicate_index >= s.tokens.size() || evidence.anchor_index >= s.tokens.size()) {
    throw PreconditionError("evidence indices outside the sentence");
  }
  const auto dropped = s.subtree(evidence.anchor_index);
  std::vector<std::size_t> kept;
  for (const auto i : s.subtree(evidence.predicate_index)) {
    if (!std::binary_search(dropped.begin(), dropped.end(), i)) kept.push_back(i);
  }
  while (!kept.empty() && is_punctuation(s.tokens[kept.back()], labels)) kept.pop_back();
  while (!kept.empty() && is_punctuation(s.tokens[kept.front()], labels)) kept.erase(kept.begin());

  Clause clause;
  clause.tokens = kept;
  for (const auto i : kept) {
    const auto& form = s.tokens[i].form;
    if (!clause.text.empty() && !attaches_left(form)) clause.text += ' ';
    clause.text += form;
  }
  // A sentence-initial capital is not part of the clause.
  if (!kept.empty() && kept.front() == 0 && clause.text.size() > 1 && clause.text[0] >= 'A' &&
      clause.text[0] <= 'Z' && !(clause.text[1] >= 'A' && clause.text[1] <= 'Z') &&
      s.tokens[0].form != "I") {
    clause.text[0] = static_cast<char>(clause.text[0] - 'A' + 'a');
  }
  return clause;
}

std::string make_metaphor_id(const MetaphorTriplet& triplet, std::string_view template_id) {
  return fmt::format("{}.{}.{}.{}", triplet.target, triplet.source, triplet.connector, template_id);
}

MetaphorRenderer::MetaphorRenderer(TemplateSet templates, ArticleRule articles)
    : templates_(std::move(templates)), articles_(std::move(articles)) {}

std::string MetaphorRenderer::fill(std::string_view pattern, const Slots& slots) const {
  std::string staged;
  staged.reserve(pattern.size() + 32);
  std::size_t i = 0;
  while (i < pattern.size()) {
    if (pattern[i] == '{') {
      const auto close = pattern.find('}', i);
      if (close != std::string_view::npos) {
        const auto name = pattern.substr(i + 1, close - i - 1);
        bool known = true;
        if (name == "T") {
          staged += slots.target;
        } else if (name == "V") {
          staged += slots.source;
        } else if (name == "ADJ") {
          staged += slots.adjective;
        } else if (name == "CLAUSE") {
          staged += slots.clause;
        } else if (name == "ART") {
          staged += kArticleMark;
        } else {
          known = false;
        }
        if (known) {
          i = close + 1;
          continue;
        }
      }
    }
    staged += pattern[i++];
  }

  std::string resolved;
  resolved.reserve(staged.size());
  for (std::size_t p = 0; p < staged.size(); ++p) {
    if (staged[p] != kArticleMark) {
      resolved += staged[p];
      continue;
    }
    std::size_t w = p + 1;
    while (w < staged.size() && (staged[w] == ' ' || staged[w] == kArticleMark)) ++w;
    std::size_t end = w;
    while (end < staged.size() && staged[end] != ' ' && staged[end] != ',' && staged[end] != '.') {
      ++end;
    }
    resolved += articles_.article(slots.source, std::string_view(staged).substr(w, end - w));
  }
  return capitalize_first(tidy(resolved));
}

GeneratedMetaphor MetaphorRenderer::render_adjective(const MetaphorTriplet& triplet,
                                                     std::string_view template_id) const {
  if (triplet.pos != PartOfSpeech::adjective) {
    throw PreconditionError("render_adjective needs an adjective connector");
  }
  if (!TemplateSet::is_adjective_template(template_id)) {
    throw ParameterError(fmt::format("unknown adjective template '{}'", template_id));
  }
  const Slots slots{triplet.target, triplet.source, triplet.connector, {}};
  GeneratedMetaphor m;
  m.id = make_metaphor_id(triplet, template_id);
  m.triplet = triplet;
  m.template_id = std::string(template_id);
  m.text = fill(templates_.pattern(template_id), slots);
  m.comparison = fill(templates_.pattern(TemplateSet::kComparison), slots);
  return m;
}

GeneratedMetaphor MetaphorRenderer::render_with_explanation(const MetaphorTriplet& triplet) const {
  if (triplet.pos != PartOfSpeech::verb && triplet.pos != PartOfSpeech::noun) {
    throw PreconditionError("explanation metaphors need a verb or noun connector");
  }
  if (!triplet.evidence) throw PreconditionError("explanation metaphor without evidence");

  const auto clause = extract_clause(*triplet.evidence);
  const std::string connector = to_lower(triplet.connector);
  const bool mentions_connector =
      std::any_of(clause.tokens.begin(), clause.tokens.end(), [&](std::size_t i) {
        return triplet.evidence->sentence.tokens[i].lemma == connector;
      });
  if (!mentions_connector) {
    throw PreconditionError(fmt::format("evidence clause '{}' does not contain '{}'", clause.text,
                                        triplet.connector));
  }

  const Slots slots{triplet.target, triplet.source, {}, clause.text};
  GeneratedMetaphor m;
  m.id = make_metaphor_id(triplet, TemplateSet::kExplanation);
  m.triplet = triplet;
  m.template_id = std::string(TemplateSet::kExplanation);
  m.text = fill(templates_.pattern(TemplateSet::kExplanation), slots);
  m.comparison = fill(templates_.pattern(TemplateSet::kComparison), slots);
  m.explanation = clause.text;
  return m;
}

ExpressionForms MetaphorRenderer::expression_forms(const GeneratedMetaphor& m) const {
  const auto& t = m.triplet;
  const std::string_view clause = m.explanation ? std::string_view(*m.explanation) : "";
  const Slots slots{t.target, t.source, t.connector, clause};
  const bool adjective = !m.explanation.has_value();

  ExpressionForms forms;
  forms.literal = fill(templates_.pattern(adjective ? TemplateSet::kLiteralAdjective
                                                    : TemplateSet::kLiteralClause),
                       slots);
  forms.one_round = m.text;
  forms.two_round.prompt = fill(templates_.pattern(TemplateSet::kPrompt), slots);
  forms.two_round.reveal = fill(templates_.pattern(adjective ? TemplateSet::kRevealAdjective
                                                             : TemplateSet::kRevealClause),
                                slots);
  return forms;
}

}  // namespace figura
