#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "figura/corpus.hpp"
#include "figura/embedding_store.hpp"
#include "figura/text.hpp"

namespace figura {

// Dependency labels recognised by the pattern matchers. Defaults follow
// Universal Dependencies; swap the sets to match another tagset.
struct RelationLabels {
  TokenSet subject{"nsubj", "nsubj:pass", "nsubjpass"};
  TokenSet adjectival_modifier{"amod"};
  TokenSet copula{"cop"};
  TokenSet object{"obj", "dobj"};
  TokenSet punctuation{"punct"};
};

struct SentenceFilter {
  std::size_t min_tokens = 5;
  std::size_t max_tokens = 40;
};

// Web addresses, e-mail addresses and bare domains.
bool looks_like_url(std::string_view token);

/// Stand-in for "not broken, not an advertisement, mentions both keywords":
/// length within bounds, every required lemma present, a single root, and no
/// URL-like token.
bool is_valid_sentence(const ParsedSentence& sentence, const TokenSet& required_lemmas,
                       const SentenceFilter& filter = {});

struct PatternCounts {
  std::size_t attributive = 0;  // "ADJ T": adjective modifies the target
  std::size_t predicative = 0;  // "T is ADJ": target is subject of a copular adjective
  std::size_t simile = 0;       // "as ADJ as (a|an) V"

  PatternCounts& operator+=(const PatternCounts& other);
  friend PatternCounts operator+(PatternCounts a, const PatternCounts& b) { return a += b; }
  friend auto operator<=>(const PatternCounts&, const PatternCounts&) = default;
};

// Sentence counts for each usage pattern of an adjective.
PatternCounts count_adjective_patterns(const CorpusIndex& index, std::string_view adjective,
                                       std::string_view target, std::string_view source,
                                       const RelationLabels& labels = {});

struct AdjectiveThresholds {
  std::size_t describe = 3;  // attributive + predicative
  std::size_t salience = 1;  // simile
};

// The adjective must both describe the target and be a salient attribute of the source.
bool validate_adjective(const PatternCounts& counts, const AdjectiveThresholds& thresholds = {});

enum class Relation { subject_verb, subject_predicate_object };
std::string_view to_string(Relation relation);

struct EvidenceSentence {
  ParsedSentence sentence;
  std::string matched_keyword;  // the anchor lemma
  Relation relation = Relation::subject_verb;
  std::size_t anchor_index = 0;     // the subject token
  std::size_t predicate_index = 0;  // the verb the anchor is subject of
  double distance_to_source = 2.0;
};

/// Sentences attesting `anchor` in the given relation with `connector`:
///  - subject_verb: anchor is the subject of a VERB token whose lemma is the connector;
///  - subject_predicate_object: anchor is the subject of a predicate whose
///    direct object has the connector's lemma.
/// Each result passes is_valid_sentence for {connector, anchor}; sentences
/// with identical surface text are kept once.
std::vector<EvidenceSentence> find_relation_sentences(const CorpusIndex& index,
                                                      std::string_view connector,
                                                      std::string_view anchor, Relation relation,
                                                      const RelationLabels& labels = {},
                                                      const SentenceFilter& filter = {});

/// Sets distance_to_source to the mean distance of each sentence's scorable
/// lemmas (in-vocabulary, not stopwords) to `source`; sentences without any
/// scorable lemma get the maximum distance 2. Returns them ascending, ties by
/// sentence id.
std::vector<EvidenceSentence> rank_explanations(const EmbeddingStore& store,
                                                std::vector<EvidenceSentence> sentences,
                                                std::string_view source,
                                                const TokenSet& stopwords);

}  // namespace figura
