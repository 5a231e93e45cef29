#include <sstream>

#include <gtest/gtest.h>

#include "figura/corpus.hpp"
#include "figura/error.hpp"
#include "oracle.hpp"

using namespace figura;

namespace {

const char* kThree =
    "# text = Fans scream loudly .\n"
    "1\tFans\tfan\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
    "2\tscream\tscream\tVERB\t_\t_\t0\troot\t_\t_\n"
    "3\tloudly\tloudly\tADV\t_\t_\t2\tadvmod\t_\t_\n"
    "4\t.\t.\tPUNCT\t_\t_\t2\tpunct\t_\t_\n"
    "\n"
    "1\tLove\tLove\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
    "2\tis\tbe\tAUX\t_\t_\t3\tcop\t_\t_\n"
    "3\tsweet\tsweet\tADJ\t_\t_\t0\troot\t_\t_\n"
    "\n"
    "# sent_id = 3\n"
    "1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
    "1\tdo\tdo\tAUX\t_\t_\t3\taux\t_\t_\n"
    "2\tn't\tnot\tPART\t_\t_\t3\tadvmod\t_\t_\n"
    "3\tcry\t_\tVERB\t_\t_\t0\troot\t_\t_\n"
    "3.1\tghost\t_\t_\t_\t_\t_\t_\t_\t_\n";

CorpusIndex build(const std::string& text, Warnings* warnings = nullptr) {
  std::istringstream in(text);
  return CorpusIndex::build(in, warnings);
}

}  // namespace

TEST(CorpusIndex, BuildsSentencesAndLemmaIndex) {
  const auto index = build(kThree);
  ASSERT_EQ(index.size(), 3u);
  EXPECT_EQ(index.skipped_blocks(), 0u);

  const auto& first = index.sentence(0);
  EXPECT_EQ(first.surface, "Fans scream loudly .");
  EXPECT_EQ(first.tokens[0].lemma, "fan");
  EXPECT_EQ(first.tokens[0].head, 2);

  // Surface is rebuilt from forms when no text comment is given.
  EXPECT_EQ(index.sentence(1).surface, "Love is sweet");
  EXPECT_EQ(index.sentence(1).tokens[0].lemma, "love");

  // Multiword range and empty node skipped, '_' lemma falls back to the form.
  const auto& third = index.sentence(2);
  ASSERT_EQ(third.tokens.size(), 3u);
  EXPECT_EQ(third.tokens[2].lemma, "cry");

  const auto love = index.sentences_with("love");
  EXPECT_EQ(std::vector<std::size_t>(love.begin(), love.end()), std::vector<std::size_t>{1});
  EXPECT_EQ(index.sentences_with("scream").size(), 1u);
  EXPECT_TRUE(index.sentences_with("absent").empty());
  const std::vector<std::string> both{"fan", "scream"};
  EXPECT_EQ(index.sentences_with_all(both), std::vector<std::size_t>{0});
}

TEST(CorpusIndex, SkipsBlockWithTwoRoots) {
  const std::string text = std::string(kThree) +
                           "\n1\ta\ta\tNOUN\t_\t_\t0\troot\t_\t_\n"
                           "2\tb\tb\tNOUN\t_\t_\t0\troot\t_\t_\n";
  Warnings warnings;
  const auto index = build(text, &warnings);
  EXPECT_EQ(index.size(), 3u);
  EXPECT_EQ(index.skipped_blocks(), 1u);
  EXPECT_FALSE(warnings.empty());
}

TEST(CorpusIndex, SkipsMalformedBlocks) {
  const std::string text = std::string(kThree) +
                           "\n1\tshort\tline\n\n"
                           "1\tx\tx\tNOUN\t_\t_\t7\tnsubj\t_\t_\n"
                           "2\ty\ty\tVERB\t_\t_\t0\troot\t_\t_\n\n"
                           "1\tx\tx\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
                           "3\ty\ty\tVERB\t_\t_\t0\troot\t_\t_\n";
  const auto index = build(text);
  EXPECT_EQ(index.size(), 3u);
  EXPECT_EQ(index.skipped_blocks(), 3u);
}

TEST(CorpusIndex, EmptyStreamIsAnError) {
  EXPECT_THROW(build(""), LoadError);
  EXPECT_THROW(build("# only a comment\n\n"), LoadError);
  EXPECT_THROW(CorpusIndex::build_file("/nonexistent/corpus.conllu"), LoadError);
}

TEST(CorpusIndex, TreeHelpers) {
  const auto index = build(kThree);
  const auto& s = index.sentence(0);
  EXPECT_EQ(s.root_count(), 1u);
  EXPECT_EQ(s.children(1), (std::vector<std::size_t>{0, 2, 3}));
  EXPECT_EQ(s.subtree(1), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(s.subtree(0), (std::vector<std::size_t>{0}));
  EXPECT_TRUE(s.has_lemma("loudly"));
}

TEST(CorpusIndex, FixtureCorpus) {
  const auto index = CorpusIndex::build_file(oracle::fixture("corpus.conllu"));
  EXPECT_EQ(index.size(), 20u);
  EXPECT_EQ(index.skipped_blocks(), 0u);
  for (std::size_t i = 0; i < index.size(); ++i) {
    EXPECT_EQ(index.sentence(i).id, i);
    EXPECT_EQ(index.sentence(i).root_count(), 1u);
  }
  EXPECT_EQ(index.sentence(16).surface, index.sentence(12).surface);
}
