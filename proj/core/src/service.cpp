#include "figura/service.hpp"

#include <algorithm>
#include <random>

#include <fmt/format.h>

#include "figura/bootstrap.hpp"
#include "figura/text.hpp"

namespace figura {

using nlohmann::json;

std::string_view to_string(ApiErrorCode code) {
  switch (code) {
    case ApiErrorCode::bad_request:
      return "bad_request";
    case ApiErrorCode::not_found:
      return "not_found";
    case ApiErrorCode::conflict:
      return "conflict";
    case ApiErrorCode::internal:
      return "internal";
  }
  return "internal";
}

int http_status(ApiErrorCode code) {
  switch (code) {
    case ApiErrorCode::bad_request:
      return 400;
    case ApiErrorCode::not_found:
      return 404;
    case ApiErrorCode::conflict:
      return 409;
    case ApiErrorCode::internal:
      return 500;
  }
  return 500;
}

json to_json(const ApiError& error) {
  return {{"error", {{"code", std::string(to_string(error.code))}, {"message", error.message}}}};
}

ApiResponse ApiResponse::error(ApiErrorCode code, std::string message) {
  if (message.empty()) message = std::string(to_string(code));
  return {http_status(code), to_json(ApiError{code, std::move(message)})};
}

ServiceResources load_service_resources(const Settings& settings, Warnings* warnings) {
  ServiceResources r;
  r.store = load_store(settings);
  r.stopwords = load_stopwords(settings);
  r.trigger = settings.trigger;
  r.dialogue = settings.dialogue;
  r.seed = settings.seed;
  r.event_log = settings.event_log;
  r.default_targets = load_word_list(settings.targets, settings.lowercase);
  r.default_sources = load_word_list(settings.sources, settings.lowercase);
  if (settings.corpus && settings.pos_table) r.pipeline = load_pipeline(settings, r.store, warnings);

  if (settings.inventory) {
    r.inventory = read_records_file(*settings.inventory);
  } else if (r.pipeline && !r.default_targets.empty() && !r.default_sources.empty()) {
    GenerationRequest request;
    request.targets = r.default_targets;
    request.sources = r.default_sources;
    r.inventory = r.pipeline->generate(request, warnings);
  }
  if (r.inventory.empty()) warn(warnings, "metaphor inventory is empty; sessions are disabled");
  return r;
}

MetaphorService::Clock MetaphorService::system_clock_ms() {
  return [] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
  };
}

MetaphorService::MetaphorService(ServiceResources resources, Clock clock)
    : resources_(std::move(resources)), clock_(std::move(clock)) {
  for (std::size_t i = 0; i < resources_.inventory.size(); ++i) {
    by_id_.emplace(resources_.inventory[i].metaphor.id, i);
  }
  if (resources_.store && !resources_.inventory.empty()) {
    std::vector<TriggerCandidate> candidates;
    for (const auto& r : resources_.inventory) {
      candidates.push_back({r.metaphor.id, r.metaphor.triplet.target});
    }
    scorer_ = std::make_unique<TriggerScorer>(*resources_.store, std::move(candidates),
                                              resources_.stopwords, resources_.trigger);
    ready_ = true;
  }

  if (resources_.event_log) {
    if (std::filesystem::exists(*resources_.event_log)) {
      const auto events = read_event_log_file(*resources_.event_log);
      for (std::size_t i = 0; i < events.size(); ++i) {
        ledger_.ingest(events[i], i + 1);
        if (!sessions_.contains(events[i].session)) open_session(events[i].session, events[i].ts);
      }
    }
    log_ = std::make_unique<EventLog>(*resources_.event_log);
  }
}

MetaphorService::~MetaphorService() = default;

std::shared_ptr<MetaphorService::Slot> MetaphorService::open_session(std::string id,
                                                                     std::int64_t created_at) {
  const auto seed = resources_.seed + sequence_.fetch_add(1);
  auto slot = std::shared_ptr<Slot>(new Slot{{}, Session(id, seed, resources_.dialogue), created_at});
  std::unique_lock lock(registry_mutex_);
  sessions_.emplace(std::move(id), slot);
  return slot;
}

std::shared_ptr<MetaphorService::Slot> MetaphorService::find(std::string_view session_id) const {
  std::shared_lock lock(registry_mutex_);
  const auto it = sessions_.find(std::string(session_id));
  return it == sessions_.end() ? nullptr : it->second;
}

std::string MetaphorService::fresh_id() {
  std::random_device device;
  std::uniform_int_distribution<std::uint64_t> bits;
  for (;;) {
    auto id = fmt::format("{:016x}{:016x}", bits(device), bits(device));
    std::shared_lock lock(registry_mutex_);
    if (!sessions_.contains(id)) return id;
  }
}

void MetaphorService::commit(std::span<const Event> events) {
  std::lock_guard lock(log_mutex_);
  for (const auto& e : events) ledger_.ingest(e, ledger_.events_seen() + 1);
  if (log_) log_->append(events);
}

ApiResponse MetaphorService::create_session() {
  if (!ready_) {
    return ApiResponse::error(ApiErrorCode::internal,
                              "service has no embedding store or metaphor inventory");
  }
  const auto created_at = clock_();
  auto id = fresh_id();
  open_session(id, created_at);
  return {201, {{"session_id", id}, {"created_at", created_at}}};
}

ApiResponse MetaphorService::post_message(std::string_view session_id, std::string_view raw_body) {
  json body;
  try {
    body = json::parse(raw_body);
  } catch (const json::parse_error&) {
    return ApiResponse::error(ApiErrorCode::bad_request, "request body is not valid JSON");
  }
  return post_message(session_id, body);
}

ApiResponse MetaphorService::post_message(std::string_view session_id, const json& body) {
  if (!ready_) return ApiResponse::error(ApiErrorCode::internal, "service is not initialised");
  if (!body.is_object() || !body.contains("text") || !body["text"].is_string()) {
    return ApiResponse::error(ApiErrorCode::bad_request, "body must be {\"text\": string}");
  }
  const auto text = body["text"].get<std::string>();
  if (trim(text).empty()) return ApiResponse::error(ApiErrorCode::bad_request, "text is empty");
  const auto slot = find(session_id);
  if (!slot) {
    return ApiResponse::error(ApiErrorCode::not_found,
                              fmt::format("no session '{}'", session_id));
  }

  std::lock_guard lock(slot->mutex);
  auto& session = slot->session;
  const auto ts = std::max(clock_(), session.last_timestamp());
  const auto decision = scorer_->decide(text, session);
  const ExpressionForms* forms = nullptr;
  if (decision.triggered) forms = &resources_.inventory[by_id_.at(*decision.metaphor_id)].forms;
  Turn turn;
  try {
    turn = session.advance(text, decision, forms, ts);
  } catch (const ProtocolError& e) {
    return ApiResponse::error(ApiErrorCode::conflict, e.what());
  }
  commit(turn.events);

  json reply = {{"text", turn.reply},
                {"kind", std::string(to_string(turn.kind))},
                {"triggered", decision.triggered},
                {"form", turn.form ? json(std::string(to_string(*turn.form))) : json(nullptr)},
                {"metaphor_id", turn.metaphor_id ? json(*turn.metaphor_id) : json(nullptr)},
                {"relevance", decision.relevance},
                {"state", std::string(state_name(session.state()))}};
  return {200, std::move(reply)};
}

ApiResponse MetaphorService::get_session(std::string_view session_id) const {
  const auto slot = find(session_id);
  if (!slot) {
    return ApiResponse::error(ApiErrorCode::not_found,
                              fmt::format("no session '{}'", session_id));
  }
  std::lock_guard lock(slot->mutex);
  json transcript = json::array();
  for (const auto& t : slot->session.transcript()) {
    transcript.push_back(
        {{"speaker", t.speaker == Speaker::user ? "user" : "bot"}, {"text", t.text}, {"ts", t.ts}});
  }
  return {200,
          {{"session_id", slot->session.id()},
           {"created_at", slot->created_at},
           {"state", std::string(state_name(slot->session.state()))},
           {"transcript", std::move(transcript)}}};
}

FollowUpStats MetaphorService::metrics() const {
  std::lock_guard lock(log_mutex_);
  return ledger_.stats();
}

ApiResponse MetaphorService::get_metrics() const { return {200, to_json(metrics())}; }

std::size_t MetaphorService::session_count() const {
  std::shared_lock lock(registry_mutex_);
  return sessions_.size();
}

namespace {

std::optional<std::vector<std::string>> string_list(const json& body, const char* key,
                                                    std::string& error) {
  const auto it = body.find(key);
  if (it == body.end() || it->is_null()) return std::nullopt;
  std::vector<std::string> out;
  if (it->is_string()) {
    out.push_back(it->get<std::string>());
    return out;
  }
  if (!it->is_array()) {
    error = fmt::format("'{}' must be a string or an array of strings", key);
    return std::nullopt;
  }
  for (const auto& v : *it) {
    if (!v.is_string()) {
      error = fmt::format("'{}' must contain strings only", key);
      return std::nullopt;
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

ApiResponse MetaphorService::batch_generate(std::string_view raw_body) const {
  json body;
  try {
    body = trim(raw_body).empty() ? json::object() : json::parse(raw_body);
  } catch (const json::parse_error&) {
    return ApiResponse::error(ApiErrorCode::bad_request, "request body is not valid JSON");
  }
  return batch_generate(body);
}

ApiResponse MetaphorService::batch_generate(const json& body) const {
  if (!resources_.pipeline) {
    return ApiResponse::error(ApiErrorCode::internal, "generation pipeline is not loaded");
  }
  if (!body.is_object()) return ApiResponse::error(ApiErrorCode::bad_request, "body must be an object");

  std::string error;
  GenerationRequest request;
  request.targets = string_list(body, "targets", error).value_or(resources_.default_targets);
  request.sources = string_list(body, "sources", error).value_or(resources_.default_sources);
  if (auto pos = string_list(body, "pos", error)) {
    request.pos.clear();
    for (const auto& p : *pos) {
      const auto parsed = parse_pos(p);
      if (!parsed || !is_content_pos(*parsed)) {
        return ApiResponse::error(ApiErrorCode::bad_request, fmt::format("invalid pos '{}'", p));
      }
      request.pos.push_back(*parsed);
    }
  }
  if (!error.empty()) return ApiResponse::error(ApiErrorCode::bad_request, error);
  if (const auto it = body.find("limit"); it != body.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<long long>() < 0) {
      return ApiResponse::error(ApiErrorCode::bad_request, "'limit' must be a non-negative integer");
    }
    request.limit = it->get<std::size_t>();
  }
  if (request.targets.empty() || request.sources.empty()) {
    return ApiResponse::error(ApiErrorCode::bad_request, "no targets or sources given");
  }

  try {
    const auto records = resources_.pipeline->generate(request);
    json list = json::array();
    for (const auto& r : records) list.push_back(to_json(r));
    return {200, {{"count", records.size()}, {"metaphors", std::move(list)}}};
  } catch (const ParameterError& e) {
    return ApiResponse::error(ApiErrorCode::bad_request, e.what());
  } catch (const LookupError& e) {
    return ApiResponse::error(ApiErrorCode::bad_request, e.what());
  }
}

ApiResponse MetaphorService::list_metaphors(std::optional<std::string> target,
                                            std::optional<std::string> pos) const {
  std::optional<PartOfSpeech> wanted_pos;
  if (pos && !pos->empty()) {
    wanted_pos = parse_pos(*pos);
    if (!wanted_pos) return ApiResponse::error(ApiErrorCode::bad_request, "invalid pos '" + *pos + "'");
  }
  if (target && resources_.store) target = resources_.store->normalize(*target);
  json list = json::array();
  for (const auto& r : resources_.inventory) {
    const auto& t = r.metaphor.triplet;
    if (target && !target->empty() && t.target != *target) continue;
    if (wanted_pos && t.pos != *wanted_pos) continue;
    list.push_back(to_json(r));
  }
  const auto count = list.size();
  return {200, {{"count", count}, {"metaphors", std::move(list)}}};
}

}  // namespace figura
