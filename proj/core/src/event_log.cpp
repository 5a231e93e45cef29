#include "figura/event_log.hpp"

#include <fmt/format.h>

#include "figura/error.hpp"
#include "figura/text.hpp"

namespace figura {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::delivery:
      return "delivery";
    case EventKind::followup:
      return "followup";
    case EventKind::message:
      return "message";
  }
  return "message";
}

nlohmann::json to_json(const Event& event) {
  nlohmann::json j;
  j["ts"] = event.ts;
  j["session"] = event.session;
  j["kind"] = to_string(event.kind);
  j["form"] = event.form ? nlohmann::json(to_string(*event.form)) : nlohmann::json(nullptr);
  j["metaphor_id"] = event.metaphor_id ? nlohmann::json(*event.metaphor_id) : nlohmann::json(nullptr);
  return j;
}

Event event_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("event is not a JSON object");
  Event e;
  try {
    e.ts = j.at("ts").get<std::int64_t>();
    e.session = j.at("session").get<std::string>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "delivery") {
      e.kind = EventKind::delivery;
    } else if (kind == "followup") {
      e.kind = EventKind::followup;
    } else if (kind == "message") {
      e.kind = EventKind::message;
    } else {
      throw DataError(fmt::format("unknown event kind '{}'", kind));
    }
    if (const auto f = j.find("form"); f != j.end() && !f->is_null()) {
      const auto form = parse_expression_form(f->get<std::string>());
      if (!form) throw DataError(fmt::format("unknown form '{}'", f->get<std::string>()));
      e.form = *form;
    }
    if (const auto m = j.find("metaphor_id"); m != j.end() && !m->is_null()) {
      e.metaphor_id = m->get<std::string>();
    }
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("malformed event: ") + ex.what());
  }
  if (e.kind == EventKind::delivery && (!e.form || !e.metaphor_id)) {
    throw DataError("delivery event needs form and metaphor_id");
  }
  if (e.kind == EventKind::followup && !e.metaphor_id) {
    throw DataError("followup event needs metaphor_id");
  }
  return e;
}

std::string to_jsonl(const Event& event) { return to_json(event).dump(); }

std::vector<Event> read_event_log(std::istream& in) {
  std::vector<Event> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      events.push_back(event_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& ex) {
      throw DataError(fmt::format("event log line {}: {}", line_no, ex.what()));
    } catch (const DataError& ex) {
      throw DataError(fmt::format("event log line {}: {}", line_no, ex.what()));
    }
  }
  return events;
}

std::vector<Event> read_event_log_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open event log " + path.string());
  return read_event_log(in);
}

std::size_t FollowUpStats::total_delivered() const {
  std::size_t n = 0;
  for (const auto& f : per_form) n += f.delivered;
  return n;
}

nlohmann::json to_json(const FollowUpStats& stats) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto form : kAllExpressionForms) {
    const auto& f = stats[form];
    j[std::string(to_string(form))] = {
        {"delivered", f.delivered}, {"followed_up", f.followed_up}, {"rate", f.rate()}};
  }
  j["total_delivered"] = stats.total_delivered();
  return j;
}

void FollowUpLedger::ingest(const Event& event, std::size_t position) {
  ++events_;
  switch (event.kind) {
    case EventKind::message:
      return;
    case EventKind::delivery: {
      if (!event.form || !event.metaphor_id) {
        throw DataError(fmt::format("event {}: delivery without form or metaphor_id", position));
      }
      ++stats_[*event.form].delivered;
      open_[{event.session, *event.metaphor_id}].push_back(*event.form);
      return;
    }
    case EventKind::followup: {
      const std::string id = event.metaphor_id.value_or("");
      const auto it = open_.find({event.session, id});
      if (it == open_.end() || it->second.empty()) {
        throw DataError(fmt::format(
            "event {}: dangling follow-up for metaphor '{}' in session '{}'", position, id,
            event.session));
      }
      const auto form = it->second.back();
      if (event.form && *event.form != form) {
        throw DataError(fmt::format("event {}: follow-up form '{}' does not match delivery '{}'",
                                    position, to_string(*event.form), to_string(form)));
      }
      it->second.pop_back();
      ++stats_[form].followed_up;
      return;
    }
  }
}

FollowUpStats record_and_report(std::span<const Event> events) {
  FollowUpLedger ledger;
  for (std::size_t i = 0; i < events.size(); ++i) ledger.ingest(events[i], i + 1);
  return ledger.stats();
}

EventLog::EventLog(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  out_.open(path_, std::ios::app);
  if (!out_) throw LoadError("cannot open event log for append: " + path_.string());
}

void EventLog::append(std::span<const Event> events) {
  if (events.empty()) return;
  std::string chunk;
  for (const auto& e : events) {
    chunk += to_jsonl(e);
    chunk += '\n';
  }
  std::lock_guard lock(mutex_);
  out_ << chunk;
  out_.flush();
}

}  // namespace figura
