#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "figura/embedding_store.hpp"
#include "figura/error.hpp"
#include "figura/pos.hpp"

namespace figura {

// Fraction of conversation-log utterances containing the word, in [0, 1].
using FrequencyTable = std::unordered_map<std::string, double>;
// Concreteness on the 1 (abstract) .. 5 (concrete) rating scale.
using ConcretenessTable = std::unordered_map<std::string, double>;

inline constexpr double kMinConcreteness = 1.0;
inline constexpr double kMaxConcreteness = 5.0;

// TSV readers ("token<TAB>value"). Blank and '#' lines are skipped.
// Unparseable values raise DataError naming the line.
FrequencyTable read_frequency_tsv(std::istream& in, bool lowercase = true);
// Out-of-range ratings are clamped into [1, 5] with a warning.
ConcretenessTable read_concreteness_tsv(std::istream& in, bool lowercase = true,
                                        Warnings* warnings = nullptr);
PosTable read_pos_tsv(std::istream& in, bool lowercase = true);

FrequencyTable read_frequency_file(const std::string& path, bool lowercase = true);
ConcretenessTable read_concreteness_file(const std::string& path, bool lowercase = true,
                                         Warnings* warnings = nullptr);
PosTable read_pos_file(const std::string& path, bool lowercase = true);

struct LexicalTables {
  FrequencyTable frequency;
  PosTable pos;
  ConcretenessTable concreteness;
};

struct ConceptEntry {
  std::string word;
  PartOfSpeech pos = PartOfSpeech::other;
  double frequency = 0.0;
  std::optional<double> concreteness;

  friend bool operator==(const ConceptEntry&, const ConceptEntry&) = default;
};

// Descending frequency, ties lexicographic.
struct TargetSet {
  std::vector<ConceptEntry> entries;
};

// Nouns only, descending concreteness, ties lexicographic.
struct SourceSet {
  std::vector<ConceptEntry> entries;
};

struct TargetSelection {
  std::size_t expansion_k = 5;
  double min_freq = 1e-5;
};

struct SourceSelection {
  std::size_t top_by_freq = 10000;
  std::size_t top_by_conc = 3000;
};

/// Abstract, conversation-frequent concepts: each theme plus its
/// `expansion_k` nearest embedding neighbours, deduplicated, then filtered by
/// frequency. An empty result is reported through `warnings`.
TargetSet select_targets(std::span<const std::string> themes, const EmbeddingStore& store,
                         const LexicalTables& tables, const TargetSelection& selection = {},
                         Warnings* warnings = nullptr);

/// Frequent, concrete nouns: the `top_by_freq` most frequent rated nouns,
/// narrowed to the `top_by_conc` most concrete.
SourceSet select_sources(const LexicalTables& tables, const SourceSelection& selection = {},
                         Warnings* warnings = nullptr);

// Utterance-containment frequency of every token of a chat log
// (one utterance per line). Returned sorted by descending frequency.
struct FrequencyCount {
  std::size_t utterances = 0;
  std::vector<std::pair<std::string, double>> rows;
};
FrequencyCount compute_utterance_frequency(std::istream& chat_log);

}  // namespace figura
