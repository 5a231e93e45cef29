#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "figura/error.hpp"

namespace figura {

struct DependencyToken {
  std::string form;
  std::string lemma;  // lowercased; falls back to the form when the column is '_'
  std::string upos;
  int head = 0;  // 1-based index of the governor, 0 for the root
  std::string deprel;
};

struct ParsedSentence {
  std::size_t id = 0;
  std::string surface;
  std::vector<DependencyToken> tokens;

  std::size_t root_count() const;
  // 0-based positions of the tokens whose head is token `index` (0-based).
  std::vector<std::size_t> children(std::size_t index) const;
  // `index` and all of its descendants, ascending.
  std::vector<std::size_t> subtree(std::size_t index) const;
  bool has_lemma(std::string_view lemma) const;
};

/// Immutable collection of dependency-parsed sentences with a lemma index.
class CorpusIndex {
 public:
  /// Reads CoNLL-U: ten tab-separated columns per token line, '#' comments,
  /// blank-line sentence separation. Multiword ranges ("2-3") and empty nodes
  /// ("4.1") are skipped. Malformed blocks (bad columns, heads out of range,
  /// zero or several roots) are dropped and counted; a stream with no valid
  /// sentence raises LoadError.
  static CorpusIndex build(std::istream& in, Warnings* warnings = nullptr);
  static CorpusIndex build_file(const std::filesystem::path& path, Warnings* warnings = nullptr);

  const std::vector<ParsedSentence>& sentences() const { return sentences_; }
  const ParsedSentence& sentence(std::size_t id) const { return sentences_.at(id); }
  std::size_t size() const { return sentences_.size(); }
  std::size_t skipped_blocks() const { return skipped_; }

  // Ascending ids of sentences containing the (lowercased) lemma.
  std::span<const std::size_t> sentences_with(std::string_view lemma) const;
  // Ids of sentences containing every listed lemma.
  std::vector<std::size_t> sentences_with_all(std::span<const std::string> lemmas) const;

 private:
  std::vector<ParsedSentence> sentences_;
  std::unordered_map<std::string, std::vector<std::size_t>> lemma_index_;
  std::size_t skipped_ = 0;
};

}  // namespace figura
