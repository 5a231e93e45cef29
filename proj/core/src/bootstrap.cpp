#include "figura/bootstrap.hpp"

#include <fmt/format.h>

#include "figura/lexicon.hpp"
#include "figura/text.hpp"

namespace figura {

namespace {

const std::filesystem::path& require(const std::optional<std::filesystem::path>& path,
                                     std::string_view key) {
  if (!path) throw LoadError(fmt::format("setting '{}' is required", key));
  if (!std::filesystem::exists(*path)) {
    throw LoadError(fmt::format("{} not found: {}", key, path->string()));
  }
  return *path;
}

}  // namespace

std::shared_ptr<const EmbeddingStore> load_store(const Settings& settings) {
  return std::make_shared<const EmbeddingStore>(EmbeddingStore::load_file(
      require(settings.embeddings, "embeddings"), {.lowercase = settings.lowercase}));
}

PosTable load_pos_table(const Settings& settings) {
  return read_pos_file(require(settings.pos_table, "pos_table").string(), settings.lowercase);
}

std::shared_ptr<const CorpusIndex> load_corpus(const Settings& settings, Warnings* warnings) {
  return std::make_shared<const CorpusIndex>(
      CorpusIndex::build_file(require(settings.corpus, "corpus"), warnings));
}

TokenSet load_stopwords(const Settings& settings) {
  if (!settings.stopwords) return {};
  return read_word_set_file(require(settings.stopwords, "stopwords").string());
}

MetaphorRenderer load_renderer(const Settings& settings) {
  auto templates = settings.templates
                       ? TemplateSet::parse_file(require(settings.templates, "templates").string())
                       : TemplateSet::defaults();
  auto articles = ArticleRule::defaults();
  if (settings.mass_nouns) {
    articles.mass_nouns = read_word_set_file(require(settings.mass_nouns, "mass_nouns").string());
  }
  return MetaphorRenderer(std::move(templates), std::move(articles));
}

PipelineOptions pipeline_options(const Settings& settings) {
  PipelineOptions o;
  o.rank = settings.rank;
  o.adjective = settings.adjective;
  o.filter = settings.filter;
  if (!settings.adjective_templates.empty()) o.adjective_templates = settings.adjective_templates;
  return o;
}

std::shared_ptr<const Pipeline> load_pipeline(const Settings& settings,
                                              std::shared_ptr<const EmbeddingStore> store,
                                              Warnings* warnings) {
  return std::make_shared<const Pipeline>(std::move(store), load_pos_table(settings),
                                          load_corpus(settings, warnings),
                                          load_stopwords(settings), load_renderer(settings),
                                          pipeline_options(settings));
}

std::vector<std::string> load_word_list(const std::optional<std::filesystem::path>& path,
                                        bool lowercase) {
  if (!path) return {};
  if (!std::filesystem::exists(*path)) {
    throw LoadError(fmt::format("word list not found: {}", path->string()));
  }
  return read_word_list_file(path->string(), lowercase);
}

}  // namespace figura
