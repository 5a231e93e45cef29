#include "figura/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <unordered_set>

#include <fmt/format.h>

namespace figura {
namespace {

template <typename OnRow>
void read_tsv(std::istream& in, bool lowercase, OnRow&& on_row) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = split(body, '\t');
    if (fields.size() < 2) {
      throw DataError(fmt::format("expected token<TAB>value at line {}", line_no));
    }
    std::string token = lowercase ? to_lower(trim(fields[0])) : std::string(trim(fields[0]));
    on_row(std::move(token), trim(fields[1]), line_no);
  }
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  return in;
}

bool frequency_first(const ConceptEntry& a, const ConceptEntry& b) {
  if (a.frequency != b.frequency) return a.frequency > b.frequency;
  return a.word < b.word;
}

}  // namespace

FrequencyTable read_frequency_tsv(std::istream& in, bool lowercase) {
  FrequencyTable table;
  read_tsv(in, lowercase, [&](std::string token, std::string_view value, std::size_t line_no) {
    const auto freq = parse_double(value);
    if (!freq || *freq < 0.0 || *freq > 1.0) {
      throw DataError(fmt::format("frequency must be in [0, 1] at line {}", line_no));
    }
    table.try_emplace(std::move(token), *freq);
  });
  return table;
}

ConcretenessTable read_concreteness_tsv(std::istream& in, bool lowercase, Warnings* warnings) {
  ConcretenessTable table;
  read_tsv(in, lowercase, [&](std::string token, std::string_view value, std::size_t line_no) {
    const auto rating = parse_double(value);
    if (!rating) throw DataError(fmt::format("invalid rating at line {}", line_no));
    double clamped = std::clamp(*rating, kMinConcreteness, kMaxConcreteness);
    if (clamped != *rating) {
      warn(warnings, fmt::format("concreteness {} for '{}' clamped to {} (line {})", *rating, token,
                                 clamped, line_no));
    }
    table.try_emplace(std::move(token), clamped);
  });
  return table;
}

PosTable read_pos_tsv(std::istream& in, bool lowercase) {
  PosTable table;
  read_tsv(in, lowercase, [&](std::string token, std::string_view value, std::size_t line_no) {
    const auto pos = parse_pos(value);
    if (!pos) throw DataError(fmt::format("unknown part of speech '{}' at line {}", value, line_no));
    table.try_emplace(std::move(token), *pos);
  });
  return table;
}

FrequencyTable read_frequency_file(const std::string& path, bool lowercase) {
  auto in = open_or_throw(path);
  return read_frequency_tsv(in, lowercase);
}

ConcretenessTable read_concreteness_file(const std::string& path, bool lowercase,
                                         Warnings* warnings) {
  auto in = open_or_throw(path);
  return read_concreteness_tsv(in, lowercase, warnings);
}

PosTable read_pos_file(const std::string& path, bool lowercase) {
  auto in = open_or_throw(path);
  return read_pos_tsv(in, lowercase);
}

TargetSet select_targets(std::span<const std::string> themes, const EmbeddingStore& store,
                         const LexicalTables& tables, const TargetSelection& selection,
                         Warnings* warnings) {
  if (themes.empty()) throw ParameterError("select_targets: theme list is empty");
  if (selection.min_freq < 0.0) throw ParameterError("select_targets: min_freq must be >= 0");

  // Deduplicate the pool before filtering.
  std::vector<std::string> pool;
  std::unordered_set<std::string> seen;
  const auto add = [&](std::string word) {
    if (seen.insert(word).second) pool.push_back(std::move(word));
  };
  for (const auto& theme : themes) {
    const std::string word = store.normalize(theme);
    add(word);
    if (selection.expansion_k > 0 && store.contains(word)) {
      for (auto& n : store.nearest_neighbors(word, selection.expansion_k)) add(std::move(n.token));
    }
  }

  TargetSet out;
  for (auto& word : pool) {
    const auto freq = tables.frequency.find(word);
    if (freq == tables.frequency.end() || freq->second < selection.min_freq) continue;
    ConceptEntry entry{word, PartOfSpeech::other, freq->second, std::nullopt};
    if (auto pos = tables.pos.find(word); pos != tables.pos.end()) entry.pos = pos->second;
    if (auto c = tables.concreteness.find(word); c != tables.concreteness.end()) {
      entry.concreteness = c->second;
    }
    out.entries.push_back(std::move(entry));
  }
  std::sort(out.entries.begin(), out.entries.end(), frequency_first);

  if (out.entries.empty()) {
    warn(warnings, fmt::format("no target candidates survive the frequency threshold {}",
                               selection.min_freq));
  }
  return out;
}

SourceSet select_sources(const LexicalTables& tables, const SourceSelection& selection,
                         Warnings* warnings) {
  if (selection.top_by_conc > selection.top_by_freq) {
    throw ParameterError("select_sources: top_by_conc must not exceed top_by_freq");
  }

  std::vector<ConceptEntry> rated;
  for (const auto& [word, pos] : tables.pos) {
    if (pos != PartOfSpeech::noun) continue;
    const auto freq = tables.frequency.find(word);
    const auto conc = tables.concreteness.find(word);
    if (freq == tables.frequency.end() || conc == tables.concreteness.end()) continue;
    rated.push_back({word, PartOfSpeech::noun, freq->second, conc->second});
  }

  std::sort(rated.begin(), rated.end(), frequency_first);
  if (rated.size() > selection.top_by_freq) rated.resize(selection.top_by_freq);

  std::sort(rated.begin(), rated.end(), [](const ConceptEntry& a, const ConceptEntry& b) {
    if (*a.concreteness != *b.concreteness) return *a.concreteness > *b.concreteness;
    return a.word < b.word;
  });
  if (rated.size() < selection.top_by_conc) {
    warn(warnings, fmt::format("only {} rated nouns available, fewer than the {} requested",
                               rated.size(), selection.top_by_conc));
  } else {
    rated.resize(selection.top_by_conc);
  }
  return SourceSet{std::move(rated)};
}

FrequencyCount compute_utterance_frequency(std::istream& chat_log) {
  std::unordered_map<std::string, std::size_t> containing;
  FrequencyCount out;
  std::string line;
  while (std::getline(chat_log, line)) {
    if (trim(line).empty()) continue;
    ++out.utterances;
    auto tokens = tokenize_words(line);
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    for (auto& t : tokens) ++containing[std::move(t)];
  }
  out.rows.reserve(containing.size());
  for (auto& [token, count] : containing) {
    out.rows.emplace_back(token, static_cast<double>(count) / static_cast<double>(out.utterances));
  }
  std::sort(out.rows.begin(), out.rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

}  // namespace figura
