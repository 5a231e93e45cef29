#include <sstream>

#include <benchmark/benchmark.h>

#include "figura/corpus.hpp"
#include "figura/evidence.hpp"

using namespace figura;

namespace {

// "The <noun> <verb>s the <object> every day ." repeated with varying lemmas.
std::string synthetic_conllu(std::size_t sentences) {
  const char* nouns[] = {"love", "park", "heart", "child", "time", "lottery"};
  const char* verbs[] = {"need", "give", "maintain", "shine", "end"};
  const char* objects[] = {"care", "chance", "light", "story"};
  std::ostringstream out;
  for (std::size_t i = 0; i < sentences; ++i) {
    const std::string n = nouns[i % 6], v = verbs[i % 5], o = objects[i % 4];
    out << "# sent_id = " << i << "\n"
        << "1\tThe\tthe\tDET\t_\t_\t2\tdet\t_\t_\n"
        << "2\t" << n << "\t" << n << "\tNOUN\t_\t_\t3\tnsubj\t_\t_\n"
        << "3\t" << v << "s\t" << v << "\tVERB\t_\t_\t0\troot\t_\t_\n"
        << "4\tthe\tthe\tDET\t_\t_\t5\tdet\t_\t_\n"
        << "5\t" << o << "\t" << o << "\tNOUN\t_\t_\t3\tobj\t_\t_\n"
        << "6\tevery\tevery\tDET\t_\t_\t7\tdet\t_\t_\n"
        << "7\tday\tday\tNOUN\t_\t_\t3\tobl\t_\t_\n"
        << "8\t.\t.\tPUNCT\t_\t_\t3\tpunct\t_\t_\n\n";
  }
  return out.str();
}

void BM_CorpusBuild(benchmark::State& state) {
  const auto text = synthetic_conllu(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    std::istringstream in(text);
    benchmark::DoNotOptimize(CorpusIndex::build(in));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_CorpusBuild)->Arg(1000)->Arg(20000);

void BM_FindRelationSentences(benchmark::State& state) {
  std::istringstream in(synthetic_conllu(static_cast<std::size_t>(state.range(0))));
  const auto index = CorpusIndex::build(in);
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_relation_sentences(index, "need", "love", Relation::subject_verb));
  }
}
BENCHMARK(BM_FindRelationSentences)->Arg(1000)->Arg(20000);

}  // namespace
