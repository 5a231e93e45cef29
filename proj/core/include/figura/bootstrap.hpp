#pragma once

#include <memory>
#include <string>
#include <vector>

#include "figura/config.hpp"
#include "figura/corpus.hpp"
#include "figura/embedding_store.hpp"
#include "figura/error.hpp"
#include "figura/generator.hpp"
#include "figura/pipeline.hpp"

namespace figura {

// Loaders turning Settings into live objects. Each throws LoadError naming
// the missing setting or the unreadable path.

std::shared_ptr<const EmbeddingStore> load_store(const Settings& settings);
PosTable load_pos_table(const Settings& settings);
std::shared_ptr<const CorpusIndex> load_corpus(const Settings& settings,
                                               Warnings* warnings = nullptr);
// Empty when no stopword file is configured.
TokenSet load_stopwords(const Settings& settings);
MetaphorRenderer load_renderer(const Settings& settings);
PipelineOptions pipeline_options(const Settings& settings);

std::shared_ptr<const Pipeline> load_pipeline(const Settings& settings,
                                              std::shared_ptr<const EmbeddingStore> store,
                                              Warnings* warnings = nullptr);

// Word list named by a path setting (targets, sources, themes); empty if unset.
std::vector<std::string> load_word_list(const std::optional<std::filesystem::path>& path,
                                        bool lowercase = true);

}  // namespace figura
