#include "figura/dialogue.hpp"

#include <algorithm>
#include <array>

#include <fmt/format.h>

#include "figura/error.hpp"

namespace figura {

std::string_view state_name(const SessionState& state) {
  return std::holds_alternative<Idle>(state) ? "idle" : "awaiting_follow_up";
}

std::string_view to_string(ReplyKind kind) {
  switch (kind) {
    case ReplyKind::fallback:
      return "fallback";
    case ReplyKind::literal:
      return "literal";
    case ReplyKind::one_round:
      return "one_round";
    case ReplyKind::two_round_prompt:
      return "two_round_prompt";
    case ReplyKind::two_round_reveal:
      return "two_round_reveal";
  }
  return "fallback";
}

Session::Session(std::string id, std::uint64_t rng_seed, DialogueOptions options)
    : id_(std::move(id)), rng_seed_(rng_seed), options_(std::move(options)), rng_(rng_seed) {
  if (options_.follow_up_window == 0) {
    throw ParameterError("follow_up_window must be at least 1");
  }
}

std::int64_t Session::last_timestamp() const {
  return transcript_.empty() ? 0 : transcript_.back().ts;
}

void Session::record(Speaker speaker, std::string text, std::int64_t ts) {
  transcript_.push_back({speaker, std::move(text), ts});
}

Turn Session::advance(std::string_view user_utterance, const TriggerDecision& decision,
                      const ExpressionForms* forms, std::int64_t ts) {
  if (!transcript_.empty() && ts < transcript_.back().ts) {
    throw ProtocolError(fmt::format("timestamp {} precedes {}", ts, transcript_.back().ts));
  }
  if (decision.triggered) {
    if (!idle()) throw ProtocolError("trigger decided while awaiting a follow-up");
    if (!decision.metaphor_id || !decision.form || forms == nullptr) {
      throw ProtocolError("trigger decision without metaphor, form or expressions");
    }
  }

  Turn turn;
  record(Speaker::user, std::string(user_utterance), ts);
  turn.events.push_back({ts, id_, EventKind::message, std::nullopt, std::nullopt});

  if (open_) {
    turn.events.push_back({ts, id_, EventKind::followup, open_->form, open_->metaphor_id});
    open_.reset();
  }

  if (const auto* waiting = std::get_if<AwaitingFollowUp>(&state_)) {
    turn.reply = std::exchange(pending_reveal_, {});
    turn.kind = ReplyKind::two_round_reveal;
    turn.metaphor_id = waiting->metaphor_id;
    turn.form = waiting->form;
    state_ = Idle{};
  } else if (decision.triggered) {
    const auto form = *decision.form;
    turn.metaphor_id = decision.metaphor_id;
    turn.form = form;
    switch (form) {
      case ExpressionForm::literal:
        turn.reply = forms->literal;
        turn.kind = ReplyKind::literal;
        break;
      case ExpressionForm::one_round:
        turn.reply = forms->one_round;
        turn.kind = ReplyKind::one_round;
        break;
      case ExpressionForm::two_round:
        turn.reply = forms->two_round.prompt;
        turn.kind = ReplyKind::two_round_prompt;
        pending_reveal_ = forms->two_round.reveal;
        state_ = AwaitingFollowUp{*decision.metaphor_id, form, 0};
        break;
    }
    open_ = OpenDelivery{*decision.metaphor_id, form, 0};
    turn.events.push_back({ts, id_, EventKind::delivery, form, decision.metaphor_id});
  } else {
    turn.reply = options_.fallback_reply;
    turn.kind = ReplyKind::fallback;
  }

  record(Speaker::bot, turn.reply, ts);
  return turn;
}

void Session::tick() {
  if (open_ && ++open_->turns_waited >= options_.follow_up_window) open_.reset();
  if (auto* waiting = std::get_if<AwaitingFollowUp>(&state_)) {
    if (++waiting->turns_waited >= options_.follow_up_window) {
      state_ = Idle{};
      pending_reveal_.clear();
    }
  }
}

bool is_question_to_bot(std::string_view utterance) {
  static const TokenSet kInterrogatives{"what", "why",  "how",   "who",   "where", "when",
                                        "which", "do",  "does",  "did",   "are",   "is",
                                        "can",  "could", "will", "would", "have",  "whose"};
  static const TokenSet kAddressee{"you", "your", "yours", "you're", "u", "yourself"};
  const auto words = tokenize_words(utterance);
  if (words.empty()) return false;
  const bool question = trim(utterance).ends_with('?') || kInterrogatives.contains(words.front());
  const bool to_bot = std::any_of(words.begin(), words.end(),
                                  [](const auto& w) { return kAddressee.contains(w); });
  return question && to_bot;
}

TriggerScorer::TriggerScorer(const EmbeddingStore& store, std::vector<TriggerCandidate> inventory,
                             TokenSet stopwords, TriggerOptions options)
    : store_(&store),
      inventory_(std::move(inventory)),
      stopwords_(std::move(stopwords)),
      options_(options) {
  if (inventory_.empty()) throw PreconditionError("trigger scoring needs a nonempty inventory");
  std::unordered_map<std::string, std::size_t> slot;
  for (const auto& c : inventory_) {
    const std::string target = store.normalize(c.target);
    auto [it, fresh] = slot.try_emplace(target, targets_.size());
    if (fresh) {
      TargetInfo info{target, store.find(target), {target}};
      if (info.index && options_.neighbor_k > 0) {
        for (auto& n : store.nearest_neighbors(target, options_.neighbor_k)) {
          info.keywords.insert(std::move(n.token));
        }
      }
      targets_.push_back(std::move(info));
    }
    target_of_.push_back(it->second);
  }
}

TriggerFeatures TriggerScorer::features_for(const std::vector<std::string>& words,
                                            const std::vector<std::size_t>& scorable,
                                            bool qa_question, std::size_t target_slot) const {
  const auto& info = targets_[target_slot];
  TriggerFeatures f;
  f.keyword_match = std::any_of(words.begin(), words.end(),
                                [&](const auto& w) { return info.keywords.contains(w); });
  if (info.index && !scorable.empty()) {
    double sum = 0.0;
    for (const auto idx : scorable) sum += store_->distance(idx, *info.index);
    f.topic_similarity = std::clamp(1.0 - sum / static_cast<double>(scorable.size()), 0.0, 1.0);
  }
  f.qa_relevance = qa_question ? 0.0 : 1.0;
  return f;
}

TriggerDecision TriggerScorer::evaluate(std::string_view utterance) const {
  std::vector<std::string> words;
  for (auto& w : tokenize_words(utterance)) words.push_back(store_->normalize(w));
  std::vector<std::size_t> scorable;
  for (const auto& w : words) {
    if (stopwords_.contains(w)) continue;
    if (const auto idx = store_->find(w)) scorable.push_back(*idx);
  }
  const bool qa_question = is_question_to_bot(utterance);

  std::vector<std::optional<TriggerFeatures>> per_target(targets_.size());
  TriggerDecision best;
  best.relevance = -1.0;
  for (std::size_t i = 0; i < inventory_.size(); ++i) {
    auto& cached = per_target[target_of_[i]];
    if (!cached) cached = features_for(words, scorable, qa_question, target_of_[i]);
    const double relevance = options_.keyword_weight * (cached->keyword_match ? 1.0 : 0.0) +
                             options_.topic_weight * cached->topic_similarity +
                             options_.qa_weight * cached->qa_relevance;
    if (relevance > best.relevance) {
      best.relevance = relevance;
      best.metaphor_id = inventory_[i].metaphor_id;
      best.features = *cached;
    }
  }
  return best;
}

TriggerDecision TriggerScorer::decide(std::string_view utterance, Session& session) const {
  TriggerDecision d = evaluate(utterance);
  if (session.idle() && d.relevance >= options_.threshold) {
    d.triggered = true;
    std::uniform_int_distribution<std::size_t> pick(0, kAllExpressionForms.size() - 1);
    d.form = kAllExpressionForms[pick(session.rng())];
  }
  return d;
}

TriggerDecision score_trigger(std::string_view utterance, Session& session,
                              std::span<const GeneratedMetaphor> inventory,
                              const EmbeddingStore& store, const TokenSet& stopwords,
                              const TriggerOptions& options) {
  std::vector<TriggerCandidate> candidates;
  candidates.reserve(inventory.size());
  for (const auto& m : inventory) candidates.push_back({m.id, m.triplet.target});
  return TriggerScorer(store, std::move(candidates), stopwords, options).decide(utterance, session);
}

}  // namespace figura
