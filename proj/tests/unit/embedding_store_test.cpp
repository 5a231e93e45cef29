#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <zlib.h>

#include "figura/embedding_store.hpp"
#include "figura/error.hpp"
#include "oracle.hpp"

using namespace figura;

namespace {

EmbeddingStore parse(const std::string& text) {
  std::istringstream in(text);
  return EmbeddingStore::load(in);
}

}  // namespace

TEST(EmbeddingStore, LoadsTwoLineFile) {
  const auto store = parse("a 1 0\nb 0 1\n");
  EXPECT_EQ(store.dimensionality(), 2u);
  EXPECT_EQ(store.size(), 2u);
  EXPECT_TRUE(store.contains("a"));
  EXPECT_TRUE(store.contains("b"));
}

TEST(EmbeddingStore, HeaderLineIsOptional) {
  const auto store = parse("2 3\nx 1 2 3\ny 3 2 1\n");
  EXPECT_EQ(store.dimensionality(), 3u);
  EXPECT_EQ(store.size(), 2u);
}

TEST(EmbeddingStore, DimensionMismatchNamesLine) {
  try {
    parse("a 1 0\nb 0 1\nc 1 0 0\n");
    FAIL() << "expected LoadError";
  } catch (const LoadError& e) {
    EXPECT_NE(std::string(e.what()).find("dimension mismatch at line 3"), std::string::npos)
        << e.what();
  }
}

TEST(EmbeddingStore, RejectsZeroVectorAndEmptyStream) {
  EXPECT_THROW(parse("a 1 0\nz 0 0\n"), LoadError);
  EXPECT_THROW(parse(""), LoadError);
  EXPECT_THROW(parse("a 1 zero\n"), LoadError);
}

TEST(EmbeddingStore, DuplicatesKeepFirstOccurrence) {
  const auto store = parse("a 1 0\nb 0 1\na 0 1\n");
  EXPECT_EQ(store.size(), 2u);
  EXPECT_NEAR(store.distance("a", "b"), 1.0, 1e-12);
}

TEST(EmbeddingStore, LowercasesByDefault) {
  const auto store = parse("Love 1 0\n");
  EXPECT_TRUE(store.contains("love"));
  EXPECT_TRUE(store.contains("LOVE"));

  std::istringstream in("Love 1 0\nlove 0 1\n");
  const auto exact = EmbeddingStore::load(in, {.lowercase = false});
  EXPECT_EQ(exact.size(), 2u);
  EXPECT_FALSE(exact.contains("LOVE"));
  EXPECT_NEAR(exact.distance("Love", "love"), 1.0, 1e-12);
}

TEST(EmbeddingStore, ClosedFormDistances) {
  const double h = std::sqrt(2.0) / 2.0;
  std::vector<std::pair<std::string, std::vector<double>>> rows{
      {"a", {1, 0}}, {"b", {0, 1}}, {"c", {h, h}}, {"d", {1, 0}}};
  const auto store = EmbeddingStore::from_vectors(rows);
  EXPECT_NEAR(store.distance("a", "d"), 0.0, 1e-12);
  EXPECT_NEAR(store.distance("a", "b"), 1.0, 1e-12);
  EXPECT_NEAR(store.distance("a", "c"), 1.0 - h, 1e-12);
}

TEST(EmbeddingStore, UnknownTokenNamesIt) {
  const auto store = parse("a 1 0\n");
  try {
    store.distance("a", "zebra");
    FAIL();
  } catch (const LookupError& e) {
    EXPECT_NE(std::string(e.what()).find("zebra"), std::string::npos);
  }
  EXPECT_THROW(store.nearest_neighbors("zebra", 1), LookupError);
}

TEST(EmbeddingStore, NearestNeighbors) {
  const auto store = parse("a 1 0\nb 0.9 0.1\nc 0 1\n");
  const auto one = store.nearest_neighbors("a", 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].token, "b");
  EXPECT_NEAR(one[0].distance, 1.0 - 0.9 / std::sqrt(0.82), 1e-12);

  const auto all = store.nearest_neighbors("a", 10);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[1].token, "c");

  const TokenSet filter{"c"};
  const auto filtered = store.nearest_neighbors("a", 3, &filter);
  ASSERT_EQ(filtered.size(), 1u);
  EXPECT_EQ(filtered[0].token, "c");
  EXPECT_NEAR(filtered[0].distance, 1.0, 1e-12);

  const TokenSet none{"nothing"};
  EXPECT_TRUE(store.nearest_neighbors("a", 3, &none).empty());
}

TEST(EmbeddingStore, NeighborTiesAreLexicographic) {
  const auto store = parse("q 1 0\nzeta 0 1\nalpha 0 1\nmid 0 1\n");
  const auto n = store.nearest_neighbors("q", 3);
  ASSERT_EQ(n.size(), 3u);
  EXPECT_EQ(n[0].token, "alpha");
  EXPECT_EQ(n[1].token, "mid");
  EXPECT_EQ(n[2].token, "zeta");
}

TEST(EmbeddingStore, FixtureVocabularyMatchesFile) {
  const auto path = oracle::fixture("world.vec");
  const auto store = EmbeddingStore::load_file(path);
  const auto reference = oracle::read_vectors(path);
  ASSERT_EQ(store.size(), reference.size());
  for (const auto& [token, _] : reference) EXPECT_TRUE(store.contains(token)) << token;
  EXPECT_EQ(store.dimensionality(), 12u);
}

TEST(EmbeddingStore, DistancePropertiesOnFixture) {
  const auto path = oracle::fixture("world.vec");
  const auto store = EmbeddingStore::load_file(path);
  const auto reference = oracle::read_vectors(path);
  for (const auto& [a, va] : reference) {
    EXPECT_LE(store.distance(a, a), 1e-12);
    for (const auto& [b, vb] : reference) {
      const double d = store.distance(a, b);
      EXPECT_NEAR(d, store.distance(b, a), 1e-12);
      EXPECT_NEAR(d, oracle::cosine_distance(va, vb), 1e-12);
      EXPECT_GE(d, 0.0);
      EXPECT_LE(d, 2.0);
    }
  }
}

TEST(EmbeddingStore, ScalingVectorsLeavesDistancesUnchanged) {
  const auto reference = oracle::read_vectors(oracle::fixture("world.vec"));
  std::vector<std::pair<std::string, std::vector<double>>> plain, scaled;
  double factor = 0.37;
  for (const auto& [token, v] : reference) {
    plain.emplace_back(token, v);
    auto w = v;
    for (auto& x : w) x *= factor;
    scaled.emplace_back(token, w);
    factor *= 1.9;
  }
  const auto a = EmbeddingStore::from_vectors(plain);
  const auto b = EmbeddingStore::from_vectors(scaled);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      EXPECT_NEAR(a.distance(i, j), b.distance(a.token(i), a.token(j)), 1e-9);
    }
  }
}

TEST(EmbeddingStore, NeighborsEqualBruteForce) {
  const auto world = oracle::synthetic_world(400, 16, 7);
  std::vector<std::pair<std::string, std::vector<double>>> rows(world.vectors.begin(),
                                                                world.vectors.end());
  const auto store = EmbeddingStore::from_vectors(rows);
  for (const std::string query : {"w0", "w17", "w123", "w399"}) {
    std::vector<std::pair<double, std::string>> all;
    for (const auto& [t, v] : world.vectors) {
      if (t != query) all.emplace_back(oracle::cosine_distance(world.vectors.at(query), v), t);
    }
    std::sort(all.begin(), all.end());
    const auto got = store.nearest_neighbors(query, 12);
    ASSERT_EQ(got.size(), 12u);
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].token, all[i].second);
      EXPECT_NEAR(got[i].distance, all[i].first, 1e-12);
      if (i > 0) EXPECT_LE(got[i - 1].distance, got[i].distance);
    }
  }
}

TEST(EmbeddingStore, ReadsGzipInput) {
  const std::string text = "a 1 0\nb 0 1\n";
  const auto path = std::filesystem::temp_directory_path() / "figura_store_test.vec.gz";
  gzFile gz = gzopen(path.c_str(), "wb");
  ASSERT_NE(gz, nullptr);
  gzwrite(gz, text.data(), static_cast<unsigned>(text.size()));
  gzclose(gz);
  const auto store = EmbeddingStore::load_file(path);
  EXPECT_EQ(store.size(), 2u);
  EXPECT_NEAR(store.distance("a", "b"), 1.0, 1e-12);
  std::filesystem::remove(path);
}
