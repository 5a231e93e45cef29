#include "figura/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

namespace figura {

Pipeline::Pipeline(std::shared_ptr<const EmbeddingStore> store, PosTable pos_table,
                   std::shared_ptr<const CorpusIndex> corpus, TokenSet stopwords,
                   MetaphorRenderer renderer, PipelineOptions options)
    : store_(std::move(store)),
      pos_table_(std::move(pos_table)),
      corpus_(std::move(corpus)),
      stopwords_(std::move(stopwords)),
      renderer_(std::move(renderer)),
      options_(std::move(options)) {
  if (!store_ || !corpus_) throw PreconditionError("pipeline needs an embedding store and a corpus");
  for (const auto& id : options_.adjective_templates) {
    if (!TemplateSet::is_adjective_template(id)) {
      throw ParameterError(fmt::format("unknown adjective template '{}'", id));
    }
  }
}

std::optional<MetaphorRecord> Pipeline::explain(const ConnectingCandidate& candidate,
                                                Relation relation) const {
  const auto& labels = options_.labels;
  const auto& filter = options_.filter;
  auto from_target =
      find_relation_sentences(*corpus_, candidate.word, candidate.target, relation, labels, filter);
  if (from_target.empty()) return std::nullopt;
  if (find_relation_sentences(*corpus_, candidate.word, candidate.source, relation, labels, filter)
          .empty()) {
    return std::nullopt;
  }

  for (auto& evidence :
       rank_explanations(*store_, std::move(from_target), candidate.source, stopwords_)) {
    MetaphorTriplet triplet{candidate.target, candidate.source, candidate.word, candidate.pos,
                            std::move(evidence)};
    try {
      MetaphorRecord record;
      record.metaphor = renderer_.render_with_explanation(triplet);
      record.score = candidate.score;
      record.forms = renderer_.expression_forms(record.metaphor);
      return record;
    } catch (const PreconditionError&) {
      // Clause lost the connector (e.g. it sat inside the subject); try the next sentence.
    }
  }
  return std::nullopt;
}

std::vector<MetaphorRecord> Pipeline::generate_pair(std::string_view target,
                                                    std::string_view source, PartOfSpeech pos,
                                                    Warnings* warnings) const {
  std::vector<MetaphorRecord> out;
  const auto candidates =
      rank_connecting_words(*store_, target, source, pos, pos_table_, options_.rank, warnings);
  for (const auto& c : candidates) {
    if (pos == PartOfSpeech::adjective) {
      const auto counts = count_adjective_patterns(*corpus_, c.word, c.target, c.source,
                                                   options_.labels);
      if (!validate_adjective(counts, options_.adjective)) continue;
      MetaphorTriplet triplet{c.target, c.source, c.word, pos, std::nullopt};
      for (const auto& id : options_.adjective_templates) {
        MetaphorRecord record;
        record.metaphor = renderer_.render_adjective(triplet, id);
        record.score = c.score;
        record.forms = renderer_.expression_forms(record.metaphor);
        record.patterns = counts;
        out.push_back(std::move(record));
      }
    } else {
      const auto relation =
          pos == PartOfSpeech::verb ? Relation::subject_verb : Relation::subject_predicate_object;
      if (auto record = explain(c, relation)) out.push_back(std::move(*record));
    }
  }
  return out;
}

std::vector<MetaphorRecord> Pipeline::generate(const GenerationRequest& request,
                                               Warnings* warnings) const {
  auto check = [&](std::string_view kind, const std::string& token) {
    if (!store_->contains(token)) {
      throw ParameterError(fmt::format("unknown {} '{}'", kind, token));
    }
    return store_->normalize(token);
  };
  std::vector<std::string> targets, sources;
  for (const auto& t : request.targets) targets.push_back(check("target", t));
  for (const auto& s : request.sources) sources.push_back(check("source", s));
  for (const auto pos : request.pos) {
    if (!is_content_pos(pos)) throw ParameterError("connecting words must be adjective, verb or noun");
  }

  std::vector<MetaphorRecord> out;
  if (request.limit && *request.limit == 0) return out;
  for (const auto& t : targets) {
    for (const auto& s : sources) {
      if (t == s) continue;
      for (const auto pos : request.pos) {
        auto part = generate_pair(t, s, pos, warnings);
        std::move(part.begin(), part.end(), std::back_inserter(out));
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.score.total != b.score.total) return a.score.total < b.score.total;
    return a.metaphor.id < b.metaphor.id;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const auto& a, const auto& b) { return a.metaphor.id == b.metaphor.id; }),
            out.end());
  if (request.limit && out.size() > *request.limit) out.resize(*request.limit);
  return out;
}

namespace {

using nlohmann::json;

json score_json(const ScoreBreakdown& s) {
  return {{"dist_target", s.dist_target},
          {"dist_source", s.dist_source},
          {"imbalance", s.imbalance},
          {"beta", s.beta},
          {"total", s.total}};
}

template <typename T>
T field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw DataError(fmt::format("record lacks '{}'", key));
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw DataError(fmt::format("record field '{}' has the wrong type", key));
  }
}

}  // namespace

json to_json(const MetaphorRecord& record) {
  const auto& m = record.metaphor;
  const auto& t = m.triplet;
  json j = {{"schema_version", kRecordSchemaVersion},
            {"id", m.id},
            {"target", t.target},
            {"source", t.source},
            {"connector", t.connector},
            {"pos", std::string(to_string(t.pos))},
            {"template", m.template_id},
            {"text", m.text},
            {"comparison", m.comparison},
            {"explanation", m.explanation ? json(*m.explanation) : json(nullptr)},
            {"score", score_json(record.score)},
            {"forms",
             {{"literal", record.forms.literal},
              {"one_round", record.forms.one_round},
              {"two_round",
               {{"prompt", record.forms.two_round.prompt},
                {"reveal", record.forms.two_round.reveal}}}}}};
  if (t.evidence) {
    j["evidence"] = {{"sentence_id", t.evidence->sentence.id},
                     {"surface", t.evidence->sentence.surface},
                     {"relation", std::string(to_string(t.evidence->relation))},
                     {"anchor", t.evidence->matched_keyword},
                     {"distance_to_source", t.evidence->distance_to_source}};
  } else {
    j["evidence"] = nullptr;
  }
  if (record.patterns) {
    j["patterns"] = {{"attributive", record.patterns->attributive},
                     {"predicative", record.patterns->predicative},
                     {"simile", record.patterns->simile}};
  } else {
    j["patterns"] = nullptr;
  }
  return j;
}

MetaphorRecord record_from_json(const json& j) {
  if (!j.is_object()) throw DataError("record is not a JSON object");
  const auto version = field<int>(j, "schema_version");
  if (version != kRecordSchemaVersion) {
    throw DataError(fmt::format("unsupported schema_version {}", version));
  }
  MetaphorRecord r;
  auto& m = r.metaphor;
  m.id = field<std::string>(j, "id");
  m.triplet.target = field<std::string>(j, "target");
  m.triplet.source = field<std::string>(j, "source");
  m.triplet.connector = field<std::string>(j, "connector");
  const auto pos = parse_pos(field<std::string>(j, "pos"));
  if (!pos || !is_content_pos(*pos)) throw DataError("record has an invalid pos");
  m.triplet.pos = *pos;
  m.template_id = field<std::string>(j, "template");
  m.text = field<std::string>(j, "text");
  m.comparison = field<std::string>(j, "comparison");
  if (const auto it = j.find("explanation"); it != j.end() && !it->is_null()) {
    m.explanation = field<std::string>(j, "explanation");
  }

  const auto score = field<json>(j, "score");
  r.score.dist_target = field<double>(score, "dist_target");
  r.score.dist_source = field<double>(score, "dist_source");
  r.score.imbalance = field<double>(score, "imbalance");
  r.score.beta = field<double>(score, "beta");
  r.score.total = field<double>(score, "total");

  const auto forms = field<json>(j, "forms");
  r.forms.literal = field<std::string>(forms, "literal");
  r.forms.one_round = field<std::string>(forms, "one_round");
  const auto two = field<json>(forms, "two_round");
  r.forms.two_round.prompt = field<std::string>(two, "prompt");
  r.forms.two_round.reveal = field<std::string>(two, "reveal");

  if (const auto it = j.find("evidence"); it != j.end() && !it->is_null()) {
    EvidenceSentence e;
    e.sentence.id = field<std::size_t>(*it, "sentence_id");
    e.sentence.surface = field<std::string>(*it, "surface");
    const auto relation = field<std::string>(*it, "relation");
    if (relation == to_string(Relation::subject_verb)) {
      e.relation = Relation::subject_verb;
    } else if (relation == to_string(Relation::subject_predicate_object)) {
      e.relation = Relation::subject_predicate_object;
    } else {
      throw DataError(fmt::format("unknown relation '{}'", relation));
    }
    e.matched_keyword = field<std::string>(*it, "anchor");
    e.distance_to_source = field<double>(*it, "distance_to_source");
    m.triplet.evidence = std::move(e);
  }
  if (const auto it = j.find("patterns"); it != j.end() && !it->is_null()) {
    r.patterns = PatternCounts{field<std::size_t>(*it, "attributive"),
                               field<std::size_t>(*it, "predicative"),
                               field<std::size_t>(*it, "simile")};
  }
  return r;
}

void write_records(std::ostream& out, std::span<const MetaphorRecord> records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
  out.flush();
}

std::vector<MetaphorRecord> read_records(std::istream& in) {
  std::vector<MetaphorRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(fmt::format("line {}: invalid JSON ({})", line_no, e.what()));
    } catch (const DataError& e) {
      throw DataError(fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  return out;
}

std::vector<MetaphorRecord> read_records_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(fmt::format("cannot open {}", path.string()));
  return read_records(in);
}

}  // namespace figura
