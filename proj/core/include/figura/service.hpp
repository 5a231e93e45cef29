#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "figura/config.hpp"
#include "figura/dialogue.hpp"
#include "figura/embedding_store.hpp"
#include "figura/event_log.hpp"
#include "figura/pipeline.hpp"

namespace figura {

enum class ApiErrorCode { bad_request, not_found, conflict, internal };
std::string_view to_string(ApiErrorCode code);
int http_status(ApiErrorCode code);

struct ApiError {
  ApiErrorCode code = ApiErrorCode::internal;
  std::string message;
};

// {"error": {"code": "...", "message": "..."}}
nlohmann::json to_json(const ApiError& error);

struct ApiResponse {
  int status = 200;
  nlohmann::json body;

  static ApiResponse error(ApiErrorCode code, std::string message);
};

struct ServiceResources {
  std::shared_ptr<const EmbeddingStore> store;
  // Needed by POST /generate only.
  std::shared_ptr<const Pipeline> pipeline;
  std::vector<MetaphorRecord> inventory;
  TokenSet stopwords;
  TriggerOptions trigger;
  DialogueOptions dialogue;
  std::uint64_t seed = 0;
  // Targets and sources used when a generate request names none.
  std::vector<std::string> default_targets;
  std::vector<std::string> default_sources;
  std::optional<std::filesystem::path> event_log;
};

// Loads everything the configuration names. The inventory comes from the
// `inventory` file when set, otherwise it is generated from targets x sources.
ServiceResources load_service_resources(const Settings& settings, Warnings* warnings = nullptr);

/// Transport-independent request handlers behind the HTTP API.
///
///   POST /session                -> 201 {session_id, created_at}
///   POST /session/{id}/message   -> {text, kind, triggered, form, metaphor_id, relevance, state}
///   GET  /session/{id}           -> {session_id, state, transcript}
///   GET  /metrics                -> follow-up stats per form
///   POST /generate               -> {count, metaphors}
///   GET  /metaphors?target=&pos= -> {count, metaphors}
///
/// Sessions are locked individually; the event log and the metrics ledger
/// share one lock. A persisted log is replayed on construction.
class MetaphorService {
 public:
  using Clock = std::function<std::int64_t()>;

  explicit MetaphorService(ServiceResources resources, Clock clock = system_clock_ms());
  ~MetaphorService();

  ApiResponse create_session();
  ApiResponse post_message(std::string_view session_id, const nlohmann::json& body);
  // Parses the raw request body first; malformed JSON is a 400.
  ApiResponse post_message(std::string_view session_id, std::string_view raw_body);
  ApiResponse get_session(std::string_view session_id) const;
  ApiResponse get_metrics() const;
  ApiResponse batch_generate(const nlohmann::json& body) const;
  ApiResponse batch_generate(std::string_view raw_body) const;
  ApiResponse list_metaphors(std::optional<std::string> target,
                             std::optional<std::string> pos) const;

  FollowUpStats metrics() const;
  std::size_t session_count() const;
  bool ready() const { return ready_; }

  static Clock system_clock_ms();

 private:
  struct Slot {
    std::mutex mutex;
    Session session;
    std::int64_t created_at;
  };

  std::shared_ptr<Slot> find(std::string_view session_id) const;
  std::shared_ptr<Slot> open_session(std::string id, std::int64_t created_at);
  void commit(std::span<const Event> events);
  std::string fresh_id();

  ServiceResources resources_;
  Clock clock_;
  bool ready_ = false;
  std::unique_ptr<TriggerScorer> scorer_;
  std::unordered_map<std::string, std::size_t> by_id_;

  mutable std::shared_mutex registry_mutex_;
  std::unordered_map<std::string, std::shared_ptr<Slot>> sessions_;
  std::atomic<std::uint64_t> sequence_{0};
  std::mutex id_mutex_;

  mutable std::mutex log_mutex_;
  FollowUpLedger ledger_;
  std::unique_ptr<EventLog> log_;
};

/// Blocking HTTP front end for a MetaphorService.
class HttpServer {
 public:
  explicit HttpServer(MetaphorService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws Error on failure.
  int bind(const std::string& host, int port);
  // Serves until stop(); requires bind().
  void listen();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace figura
