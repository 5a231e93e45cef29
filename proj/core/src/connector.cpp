#include "figura/connector.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace figura {

ScoreBreakdown connecting_score(double dist_target, double dist_source, double beta) {
  if (!(beta > 0.0)) throw ParameterError(fmt::format("beta must be positive, got {}", beta));
  ScoreBreakdown s;
  s.dist_target = dist_target;
  s.dist_source = dist_source;
  s.imbalance = std::abs(dist_target - dist_source);
  s.beta = beta;
  s.total = dist_target + dist_source + std::log(s.imbalance + beta);
  return s;
}

ScoreBreakdown connecting_score(const EmbeddingStore& store, std::string_view target,
                                std::string_view source, std::string_view word, double beta) {
  const auto t = store.index_of(target);
  const auto v = store.index_of(source);
  const auto x = store.index_of(word);
  return connecting_score(store.distance(t, x), store.distance(v, x), beta);
}

std::vector<ConnectingCandidate> rank_connecting_words(const EmbeddingStore& store,
                                                       std::string_view target,
                                                       std::string_view source, PartOfSpeech pos,
                                                       const PosTable& pos_table,
                                                       const RankOptions& options,
                                                       Warnings* warnings) {
  if (!is_content_pos(pos)) {
    throw ParameterError("connecting words must be adjectives, verbs or nouns");
  }
  if (options.k == 0) throw ParameterError("k must be at least 1");
  if (!(options.beta > 0.0)) {
    throw ParameterError(fmt::format("beta must be positive, got {}", options.beta));
  }

  const std::size_t t = store.index_of(target);
  const std::size_t v = store.index_of(source);
  const double span = store.distance(t, v);

  std::vector<ConnectingCandidate> scored;
  for (std::size_t x = 0; x < store.size(); ++x) {
    if (x == t || x == v) continue;
    const auto& word = store.token(x);
    const auto tag = pos_table.find(word);
    if (tag == pos_table.end() || tag->second != pos) continue;

    const double dt = store.distance(t, x);
    const double dv = store.distance(v, x);
    if (!(dt < span && dv < span)) continue;

    scored.push_back({store.token(t), store.token(v), word, pos, connecting_score(dt, dv, options.beta)});
  }

  const auto better = [](const ConnectingCandidate& a, const ConnectingCandidate& b) {
    if (a.score.total != b.score.total) return a.score.total < b.score.total;
    return a.word < b.word;
  };
  const std::size_t keep = std::min(options.k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                    scored.end(), better);
  scored.resize(keep);

  if (scored.empty()) {
    warn(warnings, fmt::format("no {} connects '{}' and '{}'", to_string(pos), target, source));
  }
  return scored;
}

}  // namespace figura
