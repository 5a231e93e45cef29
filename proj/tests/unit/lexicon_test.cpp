#include <algorithm>
#include <cmath>
#include <tuple>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "figura/lexicon.hpp"
#include "oracle.hpp"

using namespace figura;

namespace {

std::vector<std::string> words(const std::vector<ConceptEntry>& entries) {
  std::vector<std::string> out;
  for (const auto& e : entries) out.push_back(e.word);
  return out;
}

EmbeddingStore store_of(const oracle::Vectors& vectors) {
  std::vector<std::pair<std::string, std::vector<double>>> rows(vectors.begin(), vectors.end());
  return EmbeddingStore::from_vectors(rows);
}

}  // namespace

TEST(Lexicon, FrequentNeighborsJoinTheTheme) {
  std::vector<std::pair<std::string, std::vector<double>>> rows{
      {"love", {1, 0.1, 0}},    {"heart", {0.9, 0.2, 0}}, {"romance", {0.95, 0, 0.1}},
      {"kiss", {0.8, 0.3, 0.1}}, {"stone", {0, 0, 1}}};
  const auto store = EmbeddingStore::from_vectors(rows);
  LexicalTables tables;
  tables.frequency = {{"love", 0.0038}, {"heart", 0.0021}, {"romance", 0.000004}, {"kiss", 0.000009}};
  const std::vector<std::string> themes{"love"};
  const auto targets = select_targets(themes, store, tables);
  EXPECT_EQ(words(targets.entries), (std::vector<std::string>{"love", "heart"}));
}

TEST(Lexicon, ThemeWithoutFrequencyYieldsEmptySetAndWarning) {
  std::vector<std::pair<std::string, std::vector<double>>> rows{{"x", {1, 0}}, {"y", {0, 1}}};
  const auto store = EmbeddingStore::from_vectors(rows);
  Warnings warnings;
  const std::vector<std::string> themes{"x"};
  const auto targets = select_targets(themes, store, LexicalTables{}, {}, &warnings);
  EXPECT_TRUE(targets.entries.empty());
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_THROW(select_targets(std::vector<std::string>{}, store, LexicalTables{}), ParameterError);
}

TEST(Lexicon, TargetsMatchScriptedFilter) {
  const auto world = oracle::synthetic_world(60, 8, 99);
  const auto store = store_of(world.vectors);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> f(0.0, 4e-5);
  LexicalTables tables;
  for (const auto& [w, _] : world.vectors) {
    if (rng() % 7 != 0) tables.frequency[w] = f(rng);
  }
  std::vector<std::string> themes;
  for (int i = 0; i < 10; ++i) themes.push_back("w" + std::to_string(i * 6));
  themes.push_back("not-in-store");
  tables.frequency["not-in-store"] = 0.5;

  // Pool: themes plus their 5 nearest neighbours by raw cosine.
  std::set<std::string> pool(themes.begin(), themes.end());
  for (const auto& t : themes) {
    if (!world.vectors.contains(t)) continue;
    std::vector<std::pair<double, std::string>> d;
    for (const auto& [w, v] : world.vectors) {
      if (w != t) d.emplace_back(oracle::cosine_distance(world.vectors.at(t), v), w);
    }
    std::sort(d.begin(), d.end());
    for (int i = 0; i < 5; ++i) pool.insert(d[i].second);
  }
  std::vector<std::pair<double, std::string>> kept;
  for (const auto& w : pool) {
    const auto it = tables.frequency.find(w);
    if (it != tables.frequency.end() && it->second >= 1e-5) kept.emplace_back(-it->second, w);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<std::string> expected;
  for (const auto& [_, w] : kept) expected.push_back(w);

  const auto got = select_targets(themes, store, tables);
  EXPECT_EQ(words(got.entries), expected);
}

TEST(Lexicon, FixtureTargets) {
  const auto store = EmbeddingStore::load_file(oracle::fixture("world.vec"));
  LexicalTables tables;
  tables.frequency = read_frequency_file(oracle::fixture("world_freq.tsv"));
  tables.pos = read_pos_file(oracle::fixture("world_pos.tsv"));
  const auto themes = read_word_list_file(oracle::fixture("themes.txt"));
  const auto targets = select_targets(themes, store, tables);
  ASSERT_FALSE(targets.entries.empty());
  EXPECT_EQ(targets.entries.front().word, "time");
  for (std::size_t i = 1; i < targets.entries.size(); ++i) {
    EXPECT_GE(targets.entries[i - 1].frequency, targets.entries[i].frequency);
  }
  for (const auto& e : targets.entries) EXPECT_GE(e.frequency, 1e-5);
}

TEST(Lexicon, FoodIsASource) {
  LexicalTables tables;
  tables.frequency = {{"food", 0.0092}, {"idea", 0.004}, {"spoon", 0.0001}, {"cloud", 0.0003}};
  tables.pos = {{"food", PartOfSpeech::noun},
                {"idea", PartOfSpeech::noun},
                {"spoon", PartOfSpeech::noun},
                {"cloud", PartOfSpeech::noun}};
  tables.concreteness = {{"food", 4.80}, {"spoon", 4.9}, {"cloud", 4.5}};
  const auto sources = select_sources(tables, {.top_by_freq = 2, .top_by_conc = 2});
  EXPECT_EQ(words(sources.entries), (std::vector<std::string>{"food", "cloud"}));
}

TEST(Lexicon, UnratedNounNeverSelected) {
  LexicalTables tables;
  tables.frequency = {{"idea", 0.9}, {"cup", 0.1}};
  tables.pos = {{"idea", PartOfSpeech::noun}, {"cup", PartOfSpeech::noun}};
  tables.concreteness = {{"cup", 4.9}};
  Warnings warnings;
  const auto sources = select_sources(tables, {.top_by_freq = 10, .top_by_conc = 5}, &warnings);
  EXPECT_EQ(words(sources.entries), (std::vector<std::string>{"cup"}));
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_THROW(select_sources(tables, {.top_by_freq = 1, .top_by_conc = 2}), ParameterError);
}

TEST(Lexicon, SourcesMatchTwoStageSort) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> freq(0.0, 0.01), conc(1.0, 5.0);
  LexicalTables tables;
  for (int i = 0; i < 30; ++i) {
    const auto w = "noun" + std::to_string(i);
    tables.pos[w] = PartOfSpeech::noun;
    tables.frequency[w] = freq(rng);
    // Rounded so that concreteness ties occur.
    tables.concreteness[w] = std::round(conc(rng) * 4) / 4;
  }
  tables.pos["verbish"] = PartOfSpeech::verb;
  tables.frequency["verbish"] = 0.5;
  tables.concreteness["verbish"] = 5.0;

  std::vector<std::tuple<double, std::string>> by_freq;
  for (int i = 0; i < 30; ++i) {
    const auto w = "noun" + std::to_string(i);
    by_freq.emplace_back(-tables.frequency[w], w);
  }
  std::sort(by_freq.begin(), by_freq.end());
  by_freq.resize(20);
  std::vector<std::tuple<double, std::string>> by_conc;
  for (const auto& [_, w] : by_freq) by_conc.emplace_back(-tables.concreteness[w], w);
  std::sort(by_conc.begin(), by_conc.end());
  by_conc.resize(10);
  std::vector<std::string> expected;
  for (const auto& [_, w] : by_conc) expected.push_back(w);

  const auto got = select_sources(tables, {.top_by_freq = 20, .top_by_conc = 10});
  EXPECT_EQ(words(got.entries), expected);
}

TEST(Lexicon, TsvReaders) {
  std::istringstream freq("# comment\nLove\t0.0038\n\nheart\t0.0021\n");
  const auto f = read_frequency_tsv(freq);
  EXPECT_DOUBLE_EQ(f.at("love"), 0.0038);
  EXPECT_EQ(f.size(), 2u);

  std::istringstream bad("love\t1.5\n");
  EXPECT_THROW(read_frequency_tsv(bad), DataError);
  std::istringstream ragged("love\n");
  EXPECT_THROW(read_frequency_tsv(ragged), DataError);

  Warnings warnings;
  std::istringstream conc("rock\t5.3\nair\t0.2\nmud\t4.1\n");
  const auto c = read_concreteness_tsv(conc, true, &warnings);
  EXPECT_DOUBLE_EQ(c.at("rock"), 5.0);
  EXPECT_DOUBLE_EQ(c.at("air"), 1.0);
  EXPECT_DOUBLE_EQ(c.at("mud"), 4.1);
  EXPECT_EQ(warnings.size(), 2u);

  std::istringstream pos("love\tNOUN\nsweet\tadj\nrun\tv\n");
  const auto p = read_pos_tsv(pos);
  EXPECT_EQ(p.at("sweet"), PartOfSpeech::adjective);
  EXPECT_EQ(p.at("run"), PartOfSpeech::verb);
  std::istringstream badpos("love\tfoo\n");
  EXPECT_THROW(read_pos_tsv(badpos), DataError);
  EXPECT_THROW(read_frequency_file("/nonexistent/freq.tsv"), LoadError);
}

TEST(Lexicon, UtteranceFrequency) {
  std::istringstream log("I love you\nlove love love\n\nthe park is nice\nwhat about you?\n");
  const auto counts = compute_utterance_frequency(log);
  EXPECT_EQ(counts.utterances, 4u);
  const std::map<std::string, double> rows(counts.rows.begin(), counts.rows.end());
  EXPECT_DOUBLE_EQ(rows.at("love"), 0.5);
  EXPECT_DOUBLE_EQ(rows.at("you"), 0.5);
  EXPECT_DOUBLE_EQ(rows.at("park"), 0.25);
  EXPECT_EQ(counts.rows.front().first, "love");
}

TEST(Lexicon, SelectionIsDeterministic) {
  const auto store = EmbeddingStore::load_file(oracle::fixture("world.vec"));
  LexicalTables tables;
  tables.frequency = read_frequency_file(oracle::fixture("world_freq.tsv"));
  tables.pos = read_pos_file(oracle::fixture("world_pos.tsv"));
  tables.concreteness = read_concreteness_file(oracle::fixture("world_conc.tsv"));
  const auto themes = read_word_list_file(oracle::fixture("themes.txt"));
  EXPECT_EQ(select_targets(themes, store, tables).entries,
            select_targets(themes, store, tables).entries);
  const auto a = select_sources(tables, {.top_by_freq = 20, .top_by_conc = 8});
  const auto b = select_sources(tables, {.top_by_freq = 20, .top_by_conc = 8});
  EXPECT_EQ(a.entries, b.entries);
  EXPECT_EQ(a.entries.size(), 8u);
}
