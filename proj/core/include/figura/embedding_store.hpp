#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "figura/text.hpp"

namespace figura {

struct EmbeddingLoadOptions {
  // Fold tokens to lowercase at load time and at every query.
  bool lowercase = true;
};

struct Neighbor {
  std::string token;
  double distance = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Immutable word -> vector table answering cosine-distance queries.
///
/// Text format: an optional "count dim" header line, then one
/// "token v1 ... vd" line per word. Gzip-compressed input is detected by its
/// magic bytes. Duplicate tokens keep their first occurrence; zero vectors
/// and ragged rows are rejected.
class EmbeddingStore {
 public:
  static EmbeddingStore load(std::istream& in, const EmbeddingLoadOptions& options = {});
  static EmbeddingStore load_file(const std::filesystem::path& path,
                                  const EmbeddingLoadOptions& options = {});
  static EmbeddingStore from_vectors(
      std::span<const std::pair<std::string, std::vector<double>>> rows,
      const EmbeddingLoadOptions& options = {});

  std::size_t dimensionality() const { return dim_; }
  std::size_t size() const { return tokens_.size(); }
  bool lowercases() const { return lowercase_; }

  // Applies the store's casing rule to a query token.
  std::string normalize(std::string_view token) const;

  bool contains(std::string_view token) const;
  std::optional<std::size_t> find(std::string_view token) const;
  // Throws LookupError naming the token.
  std::size_t index_of(std::string_view token) const;

  // Tokens in load order.
  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::string& token(std::size_t index) const { return tokens_[index]; }
  std::span<const double> vector(std::size_t index) const;
  std::span<const double> vector(std::string_view token) const;

  // 1 - cos(a, b), clamped to [0, 2].
  double distance(std::size_t a, std::size_t b) const;
  double distance(std::string_view a, std::string_view b) const;

  // The k closest tokens to `word` (itself excluded), ascending by distance
  // with lexicographic tie-break. `filter`, when given, restricts candidates.
  std::vector<Neighbor> nearest_neighbors(std::string_view word, std::size_t k,
                                          const TokenSet* filter = nullptr) const;

 private:
  EmbeddingStore() = default;
  bool add_row(std::string token, std::vector<double>&& values);

  std::size_t dim_ = 0;
  bool lowercase_ = true;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> data_;
  std::vector<double> norms_;
};

}  // namespace figura
