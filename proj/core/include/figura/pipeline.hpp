#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "figura/connector.hpp"
#include "figura/corpus.hpp"
#include "figura/embedding_store.hpp"
#include "figura/error.hpp"
#include "figura/evidence.hpp"
#include "figura/generator.hpp"
#include "figura/pos.hpp"

namespace figura {

inline constexpr int kRecordSchemaVersion = 1;

struct PipelineOptions {
  RankOptions rank;
  AdjectiveThresholds adjective;
  SentenceFilter filter;
  RelationLabels labels;
  // Templates used for every validated adjective connector.
  std::vector<std::string> adjective_templates{std::string(TemplateSet::kAsAs)};
};

struct GenerationRequest {
  std::vector<std::string> targets;
  std::vector<std::string> sources;
  std::vector<PartOfSpeech> pos{PartOfSpeech::adjective, PartOfSpeech::verb, PartOfSpeech::noun};
  std::optional<std::size_t> limit;
};

struct MetaphorRecord {
  GeneratedMetaphor metaphor;
  ScoreBreakdown score;
  ExpressionForms forms;
  std::optional<PatternCounts> patterns;  // adjective metaphors only
};

/// connector ranking -> corpus evidence -> rendering, for every
/// (target, source, pos) combination of a request.
///
/// Adjectives must pass validate_adjective. Verbs need subject-verb evidence
/// and nouns subject-predicate-object evidence for both the target and the
/// source; the target sentence closest to the source becomes the explanation.
class Pipeline {
 public:
  Pipeline(std::shared_ptr<const EmbeddingStore> store, PosTable pos_table,
           std::shared_ptr<const CorpusIndex> corpus, TokenSet stopwords,
           MetaphorRenderer renderer = MetaphorRenderer(), PipelineOptions options = {});

  // Ascending by connecting score, ties by id. Unknown tokens raise
  // ParameterError naming the token.
  std::vector<MetaphorRecord> generate(const GenerationRequest& request,
                                       Warnings* warnings = nullptr) const;

  std::vector<MetaphorRecord> generate_pair(std::string_view target, std::string_view source,
                                            PartOfSpeech pos, Warnings* warnings = nullptr) const;

  const EmbeddingStore& store() const { return *store_; }
  const MetaphorRenderer& renderer() const { return renderer_; }
  const PipelineOptions& options() const { return options_; }

 private:
  std::optional<MetaphorRecord> explain(const ConnectingCandidate& candidate,
                                        Relation relation) const;

  std::shared_ptr<const EmbeddingStore> store_;
  PosTable pos_table_;
  std::shared_ptr<const CorpusIndex> corpus_;
  TokenSet stopwords_;
  MetaphorRenderer renderer_;
  PipelineOptions options_;
};

// JSON-lines record (schema_version 1):
//   {"schema_version":1, "id", "target", "source", "connector", "pos", "template",
//    "text", "comparison", "explanation", "score":{...}, "forms":{...},
//    "evidence":{"sentence_id","surface","relation","distance_to_source"}|null,
//    "patterns":{"attributive","predicative","simile"}|null}
nlohmann::json to_json(const MetaphorRecord& record);
// Evidence comes back without its parse; only id and surface survive.
MetaphorRecord record_from_json(const nlohmann::json& j);

void write_records(std::ostream& out, std::span<const MetaphorRecord> records);
std::vector<MetaphorRecord> read_records(std::istream& in);
std::vector<MetaphorRecord> read_records_file(const std::filesystem::path& path);

}  // namespace figura
