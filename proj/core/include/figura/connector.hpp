#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "figura/embedding_store.hpp"
#include "figura/error.hpp"
#include "figura/pos.hpp"

namespace figura {

inline constexpr double kDefaultBeta = 0.01;

/// Terms of the connecting score of a word X for target T and source V:
///
///   total = dist(T,X) + dist(V,X) + ln(|dist(T,X) - dist(V,X)| + beta)
///
/// Lower is better. The log term rewards words that sit equally far from
/// both concepts.
struct ScoreBreakdown {
  double dist_target = 0.0;
  double dist_source = 0.0;
  double imbalance = 0.0;
  double beta = kDefaultBeta;
  double total = 0.0;
};

struct ConnectingCandidate {
  std::string target;
  std::string source;
  std::string word;
  PartOfSpeech pos = PartOfSpeech::adjective;
  ScoreBreakdown score;
};

// Score from precomputed distances. Throws ParameterError unless beta > 0.
ScoreBreakdown connecting_score(double dist_target, double dist_source, double beta);

ScoreBreakdown connecting_score(const EmbeddingStore& store, std::string_view target,
                                std::string_view source, std::string_view word,
                                double beta = kDefaultBeta);

struct RankOptions {
  std::size_t k = 5;
  double beta = kDefaultBeta;
};

/// The k best connecting words of one part of speech, ascending by score
/// (ties lexicographic). Candidates must lie closer to both T and V than T and
/// V are to each other; when none do, the result is empty and a warning is
/// recorded.
std::vector<ConnectingCandidate> rank_connecting_words(const EmbeddingStore& store,
                                                       std::string_view target,
                                                       std::string_view source, PartOfSpeech pos,
                                                       const PosTable& pos_table,
                                                       const RankOptions& options = {},
                                                       Warnings* warnings = nullptr);

}  // namespace figura
