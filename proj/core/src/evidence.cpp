#include "figura/evidence.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

namespace figura {

namespace {

bool has_label(const TokenSet& labels, const std::string& deprel) {
  return labels.contains(deprel);
}

std::size_t head_position(const DependencyToken& t) { return static_cast<std::size_t>(t.head - 1); }

}  // namespace

bool looks_like_url(std::string_view token) {
  const std::string t = to_lower(token);
  if (t.find("://") != std::string::npos || t.starts_with("www.")) return true;
  if (t.find('@') != std::string::npos && t.find('.') != std::string::npos) return true;
  static constexpr std::array<std::string_view, 8> kDomains{".com", ".net", ".org", ".cn",
                                                            ".io",  ".co",  ".html", ".php"};
  for (const auto suffix : kDomains) {
    const auto pos = t.find(suffix);
    if (pos != std::string::npos && pos > 0) {
      const auto after = pos + suffix.size();
      if (after == t.size() || t[after] == '/' || t[after] == '.' || t[after] == '?') return true;
    }
  }
  return false;
}

bool is_valid_sentence(const ParsedSentence& sentence, const TokenSet& required_lemmas,
                       const SentenceFilter& filter) {
  const auto n = sentence.tokens.size();
  if (n < filter.min_tokens || n > filter.max_tokens) return false;
  if (sentence.root_count() != 1) return false;
  for (const auto& lemma : required_lemmas) {
    if (!sentence.has_lemma(to_lower(lemma))) return false;
  }
  return std::none_of(sentence.tokens.begin(), sentence.tokens.end(),
                      [](const auto& t) { return looks_like_url(t.form); });
}

PatternCounts& PatternCounts::operator+=(const PatternCounts& other) {
  attributive += other.attributive;
  predicative += other.predicative;
  simile += other.simile;
  return *this;
}

PatternCounts count_adjective_patterns(const CorpusIndex& index, std::string_view adjective,
                                       std::string_view target, std::string_view source,
                                       const RelationLabels& labels) {
  const std::string adj = to_lower(adjective);
  const std::string tgt = to_lower(target);
  const std::string src = to_lower(source);
  PatternCounts counts;

  for (const auto id : index.sentences_with_all(std::array{adj, tgt})) {
    const auto& s = index.sentence(id);
    bool attributive = false;
    bool predicative = false;
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const auto& t = s.tokens[i];
      if (t.head == 0) continue;
      const auto& head = s.tokens[head_position(t)];
      if (t.lemma == adj && head.lemma == tgt && has_label(labels.adjectival_modifier, t.deprel)) {
        attributive = true;
      }
      if (t.lemma == tgt && head.lemma == adj && has_label(labels.subject, t.deprel)) {
        const auto siblings = s.children(head_position(t));
        predicative = predicative || std::any_of(siblings.begin(), siblings.end(), [&](auto c) {
                        return has_label(labels.copula, s.tokens[c].deprel);
                      });
      }
    }
    counts.attributive += attributive ? 1 : 0;
    counts.predicative += predicative ? 1 : 0;
  }

  for (const auto id : index.sentences_with_all(std::array{adj, src})) {
    const auto& tokens = index.sentence(id).tokens;
    const auto is_as = [&](std::size_t i) { return to_lower(tokens[i].form) == "as"; };
    bool simile = false;
    for (std::size_t i = 0; i + 3 < tokens.size() && !simile; ++i) {
      if (!is_as(i) || tokens[i + 1].lemma != adj || !is_as(i + 2)) continue;
      // The source may follow directly or after one intervening token (an article).
      for (std::size_t j = i + 3; j <= i + 4 && j < tokens.size(); ++j) {
        if (tokens[j].lemma == src) simile = true;
      }
    }
    counts.simile += simile ? 1 : 0;
  }
  return counts;
}

bool validate_adjective(const PatternCounts& counts, const AdjectiveThresholds& thresholds) {
  return counts.attributive + counts.predicative >= thresholds.describe &&
         counts.simile >= thresholds.salience;
}

std::string_view to_string(Relation relation) {
  return relation == Relation::subject_verb ? "subject-verb" : "subject-predicate-object";
}

std::vector<EvidenceSentence> find_relation_sentences(const CorpusIndex& index,
                                                      std::string_view connector,
                                                      std::string_view anchor, Relation relation,
                                                      const RelationLabels& labels,
                                                      const SentenceFilter& filter) {
  const std::string conn = to_lower(connector);
  const std::string anc = to_lower(anchor);
  const TokenSet required{conn, anc};
  std::vector<EvidenceSentence> out;
  std::unordered_set<std::string> surfaces;

  for (const auto id : index.sentences_with_all(std::array{conn, anc})) {
    const auto& s = index.sentence(id);
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const auto& subject = s.tokens[i];
      if (subject.lemma != anc || subject.head == 0 || !has_label(labels.subject, subject.deprel)) {
        continue;
      }
      const std::size_t predicate = head_position(subject);
      const auto& pred = s.tokens[predicate];

      bool match = false;
      if (relation == Relation::subject_verb) {
        match = pred.lemma == conn && pred.upos == "VERB";
      } else {
        for (const auto c : s.children(predicate)) {
          const auto& dep = s.tokens[c];
          if (dep.lemma == conn && has_label(labels.object, dep.deprel)) match = true;
        }
      }
      if (!match) continue;
      if (!is_valid_sentence(s, required, filter)) break;
      if (surfaces.insert(s.surface).second) {
        out.push_back({s, anc, relation, i, predicate, 2.0});
      }
      break;
    }
  }
  return out;
}

std::vector<EvidenceSentence> rank_explanations(const EmbeddingStore& store,
                                                std::vector<EvidenceSentence> sentences,
                                                std::string_view source,
                                                const TokenSet& stopwords) {
  const std::size_t src = store.index_of(source);
  for (auto& e : sentences) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& t : e.sentence.tokens) {
      if (stopwords.contains(t.lemma)) continue;
      const auto idx = store.find(t.lemma);
      if (!idx) continue;
      sum += store.distance(*idx, src);
      ++n;
    }
    e.distance_to_source = n == 0 ? 2.0 : sum / static_cast<double>(n);
  }
  std::stable_sort(sentences.begin(), sentences.end(), [](const auto& a, const auto& b) {
    if (a.distance_to_source != b.distance_to_source) {
      return a.distance_to_source < b.distance_to_source;
    }
    return a.sentence.id < b.sentence.id;
  });
  return sentences;
}

}  // namespace figura
