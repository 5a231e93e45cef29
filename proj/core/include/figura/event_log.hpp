#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "figura/expression_form.hpp"

namespace figura {

enum class EventKind { delivery, followup, message };
std::string_view to_string(EventKind kind);

/// One line of the append-only session log:
///   {"ts": <ms>, "session": "...", "kind": "delivery|followup|message",
///    "form": "literal|one_round|two_round"|null, "metaphor_id": "..."|null}
struct Event {
  std::int64_t ts = 0;
  std::string session;
  EventKind kind = EventKind::message;
  std::optional<ExpressionForm> form;
  std::optional<std::string> metaphor_id;

  friend bool operator==(const Event&, const Event&) = default;
};

nlohmann::json to_json(const Event& event);
// Throws DataError on missing or ill-typed fields.
Event event_from_json(const nlohmann::json& j);
std::string to_jsonl(const Event& event);

// Reads a JSON-lines log; blank lines are ignored. Errors name the line.
std::vector<Event> read_event_log(std::istream& in);
std::vector<Event> read_event_log_file(const std::filesystem::path& path);

struct FormStats {
  std::size_t delivered = 0;
  std::size_t followed_up = 0;

  double rate() const {
    return delivered == 0 ? 0.0 : static_cast<double>(followed_up) / static_cast<double>(delivered);
  }
  friend bool operator==(const FormStats&, const FormStats&) = default;
};

struct FollowUpStats {
  std::array<FormStats, 3> per_form{};

  const FormStats& operator[](ExpressionForm form) const { return per_form[index_of(form)]; }
  FormStats& operator[](ExpressionForm form) { return per_form[index_of(form)]; }
  std::size_t total_delivered() const;

  friend bool operator==(const FollowUpStats&, const FollowUpStats&) = default;
};

nlohmann::json to_json(const FollowUpStats& stats);

/// Incremental follow-up accounting. Each follow-up must close an earlier,
/// not yet followed-up delivery of the same metaphor in the same session.
class FollowUpLedger {
 public:
  // `position` is used in error messages only (e.g. the log line number).
  void ingest(const Event& event, std::size_t position = 0);
  const FollowUpStats& stats() const { return stats_; }
  std::size_t events_seen() const { return events_; }

 private:
  FollowUpStats stats_;
  std::size_t events_ = 0;
  // (session, metaphor id) -> forms of deliveries still open for a follow-up.
  std::map<std::pair<std::string, std::string>, std::vector<ExpressionForm>> open_;
};

// Replays a whole log. Throws DataError naming a dangling follow-up.
FollowUpStats record_and_report(std::span<const Event> events);

/// Durable, thread-safe append-only JSON-lines log.
class EventLog {
 public:
  explicit EventLog(std::filesystem::path path);

  void append(std::span<const Event> events);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::mutex mutex_;
  std::ofstream out_;
};

}  // namespace figura
