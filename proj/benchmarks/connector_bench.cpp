#include <map>

#include <benchmark/benchmark.h>

#include "figura/connector.hpp"
#include "oracle.hpp"

using namespace figura;

namespace {

struct World {
  EmbeddingStore store;
  PosTable pos;
};

const World& world(std::size_t n) {
  static std::map<std::size_t, World> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    const auto synthetic = oracle::synthetic_world(n, 100, 42);
    std::vector<std::pair<std::string, std::vector<double>>> rows(synthetic.vectors.begin(),
                                                                   synthetic.vectors.end());
    PosTable pos;
    for (const auto& [w, p] : synthetic.pos) pos[w] = *parse_pos(p);
    it = cache.emplace(n, World{EmbeddingStore::from_vectors(rows), std::move(pos)}).first;
  }
  return it->second;
}

void BM_NearestNeighbors(benchmark::State& state) {
  const auto& w = world(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(w.store.nearest_neighbors("w7", 5));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NearestNeighbors)->Arg(1000)->Arg(10000)->Arg(50000);

void BM_RankConnectingWords(benchmark::State& state) {
  const auto& w = world(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rank_connecting_words(w.store, "w3", "w11", PartOfSpeech::adjective, w.pos));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RankConnectingWords)->Arg(1000)->Arg(10000)->Arg(50000);

}  // namespace
