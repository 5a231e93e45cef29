#include "figura/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>

#include <fmt/format.h>

#include "figura/text.hpp"

namespace figura {

std::size_t ParsedSentence::root_count() const {
  return static_cast<std::size_t>(
      std::count_if(tokens.begin(), tokens.end(), [](const auto& t) { return t.head == 0; }));
}

std::vector<std::size_t> ParsedSentence::children(std::size_t index) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].head == static_cast<int>(index) + 1) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> ParsedSentence::subtree(std::size_t index) const {
  std::vector<bool> inside(tokens.size(), false);
  std::vector<std::size_t> stack{index};
  while (!stack.empty()) {
    const auto node = stack.back();
    stack.pop_back();
    if (inside[node]) continue;
    inside[node] = true;
    for (auto child : children(node)) stack.push_back(child);
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (inside[i]) out.push_back(i);
  }
  return out;
}

bool ParsedSentence::has_lemma(std::string_view lemma) const {
  return std::any_of(tokens.begin(), tokens.end(), [&](const auto& t) { return t.lemma == lemma; });
}

namespace {

struct Block {
  std::vector<std::string> lines;
  std::size_t first_line = 0;
};

// Returns nullopt (with a reason) when the block violates the format.
std::optional<ParsedSentence> parse_block(const Block& block, std::string& reason) {
  ParsedSentence sentence;
  std::string text_comment;
  for (const auto& raw : block.lines) {
    std::string_view line = raw;
    if (line.front() == '#') {
      const auto body = trim(line.substr(1));
      if (body.starts_with("text")) {
        const auto eq = body.find('=');
        if (eq != std::string_view::npos && trim(body.substr(4, eq - 4)).empty()) {
          text_comment = std::string(trim(body.substr(eq + 1)));
        }
      }
      continue;
    }
    const auto cols = split(line, '\t');
    if (cols.size() != 10) {
      reason = fmt::format("expected 10 columns, found {}", cols.size());
      return std::nullopt;
    }
    if (cols[0].find('-') != std::string_view::npos || cols[0].find('.') != std::string_view::npos) {
      continue;
    }
    const auto id = parse_integer(cols[0]);
    const auto head = parse_integer(cols[6]);
    if (!id || *id != static_cast<long long>(sentence.tokens.size()) + 1) {
      reason = fmt::format("token id '{}' out of sequence", cols[0]);
      return std::nullopt;
    }
    if (!head || *head < 0) {
      reason = fmt::format("invalid head '{}'", cols[6]);
      return std::nullopt;
    }
    DependencyToken token;
    token.form = std::string(cols[1]);
    token.lemma = to_lower(cols[2] == "_" ? cols[1] : cols[2]);
    token.upos = std::string(cols[3]);
    token.head = static_cast<int>(*head);
    token.deprel = std::string(cols[7]);
    sentence.tokens.push_back(std::move(token));
  }

  if (sentence.tokens.empty()) {
    reason = "no token lines";
    return std::nullopt;
  }
  const auto n = static_cast<int>(sentence.tokens.size());
  for (const auto& t : sentence.tokens) {
    if (t.head > n) {
      reason = fmt::format("head {} beyond {} tokens", t.head, n);
      return std::nullopt;
    }
  }
  if (sentence.root_count() != 1) {
    reason = fmt::format("{} roots", sentence.root_count());
    return std::nullopt;
  }

  if (!text_comment.empty()) {
    sentence.surface = std::move(text_comment);
  } else {
    for (const auto& t : sentence.tokens) {
      if (!sentence.surface.empty()) sentence.surface += ' ';
      sentence.surface += t.form;
    }
  }
  return sentence;
}

}  // namespace

CorpusIndex CorpusIndex::build(std::istream& in, Warnings* warnings) {
  CorpusIndex index;
  Block block;
  std::string line;
  std::size_t line_no = 0;

  const auto flush = [&] {
    if (block.lines.empty()) return;
    std::string reason;
    if (auto sentence = parse_block(block, reason)) {
      sentence->id = index.sentences_.size();
      index.sentences_.push_back(std::move(*sentence));
    } else {
      ++index.skipped_;
      warn(warnings, fmt::format("skipped sentence block at line {}: {}", block.first_line, reason));
    }
    block = Block{};
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      flush();
      continue;
    }
    if (block.lines.empty()) block.first_line = line_no;
    block.lines.push_back(line);
  }
  flush();

  if (index.sentences_.empty()) {
    throw LoadError(fmt::format("no valid sentences in CoNLL-U input ({} blocks skipped)",
                                index.skipped_));
  }

  for (const auto& s : index.sentences_) {
    for (const auto& t : s.tokens) {
      auto& ids = index.lemma_index_[t.lemma];
      if (ids.empty() || ids.back() != s.id) ids.push_back(s.id);
    }
  }
  return index;
}

CorpusIndex CorpusIndex::build_file(const std::filesystem::path& path, Warnings* warnings) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open corpus " + path.string());
  return build(in, warnings);
}

std::span<const std::size_t> CorpusIndex::sentences_with(std::string_view lemma) const {
  const auto it = lemma_index_.find(to_lower(lemma));
  if (it == lemma_index_.end()) return {};
  return it->second;
}

std::vector<std::size_t> CorpusIndex::sentences_with_all(std::span<const std::string> lemmas) const {
  if (lemmas.empty()) return {};
  const auto first = sentences_with(lemmas.front());
  std::vector<std::size_t> out(first.begin(), first.end());
  for (std::size_t i = 1; i < lemmas.size() && !out.empty(); ++i) {
    const auto next = sentences_with(lemmas[i]);
    std::vector<std::size_t> merged;
    std::set_intersection(out.begin(), out.end(), next.begin(), next.end(),
                          std::back_inserter(merged));
    out = std::move(merged);
  }
  return out;
}

}  // namespace figura
