#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "figura/embedding_store.hpp"
#include "figura/event_log.hpp"
#include "figura/expression_form.hpp"
#include "figura/generator.hpp"
#include "figura/text.hpp"

namespace figura {

struct TriggerOptions {
  double keyword_weight = 0.5;
  double topic_weight = 0.4;
  double qa_weight = 0.1;
  double threshold = 0.5;
  // Neighbours of the target that also count as a keyword hit.
  std::size_t neighbor_k = 5;
};

struct TriggerFeatures {
  bool keyword_match = false;
  double topic_similarity = 0.0;
  double qa_relevance = 0.0;
};

struct TriggerDecision {
  bool triggered = false;
  std::optional<std::string> metaphor_id;
  std::optional<ExpressionForm> form;
  double relevance = 0.0;
  TriggerFeatures features;
};

struct DialogueOptions {
  // User turns after a delivery during which a message counts as a follow-up.
  std::size_t follow_up_window = 1;
  std::string fallback_reply = "I see. Tell me more.";
};

enum class Speaker { user, bot };

struct TranscriptEntry {
  Speaker speaker = Speaker::user;
  std::string text;
  std::int64_t ts = 0;
};

struct Idle {
  friend bool operator==(const Idle&, const Idle&) = default;
};
struct AwaitingFollowUp {
  std::string metaphor_id;
  ExpressionForm form = ExpressionForm::two_round;
  std::size_t turns_waited = 0;
  friend bool operator==(const AwaitingFollowUp&, const AwaitingFollowUp&) = default;
};
using SessionState = std::variant<Idle, AwaitingFollowUp>;

std::string_view state_name(const SessionState& state);

enum class ReplyKind { fallback, literal, one_round, two_round_prompt, two_round_reveal };
std::string_view to_string(ReplyKind kind);

struct Turn {
  std::string reply;
  ReplyKind kind = ReplyKind::fallback;
  std::optional<std::string> metaphor_id;
  std::optional<ExpressionForm> form;
  // Log events produced by this turn, in order.
  std::vector<Event> events;
};

/// Conversation state for one user.
///
/// Idle --(trigger: literal | one_round)--> Idle
/// Idle --(trigger: two_round)--> AwaitingFollowUp --(user message)--> Idle + reveal
/// AwaitingFollowUp --(follow_up_window silent turns)--> Idle, no reveal
///
/// Every delivery stays open for a follow-up until the next user message or
/// until the window runs out.
class Session {
 public:
  Session(std::string id, std::uint64_t rng_seed, DialogueOptions options = {});

  const std::string& id() const { return id_; }
  const SessionState& state() const { return state_; }
  bool idle() const { return std::holds_alternative<Idle>(state_); }
  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }
  std::uint64_t rng_seed() const { return rng_seed_; }
  const DialogueOptions& options() const { return options_; }
  std::int64_t last_timestamp() const;
  std::mt19937_64& rng() { return rng_; }

  // Handles one user message. `forms` must describe the decided metaphor when
  // the decision triggers; it is ignored otherwise. Throws ProtocolError when
  // the decision contradicts the state or timestamps run backwards.
  Turn advance(std::string_view user_utterance, const TriggerDecision& decision,
               const ExpressionForms* forms, std::int64_t ts);

  // A turn passes with no user reply.
  void tick();

 private:
  struct OpenDelivery {
    std::string metaphor_id;
    ExpressionForm form;
    std::size_t turns_waited = 0;
  };

  void record(Speaker speaker, std::string text, std::int64_t ts);

  std::string id_;
  std::uint64_t rng_seed_;
  DialogueOptions options_;
  std::mt19937_64 rng_;
  SessionState state_ = Idle{};
  std::vector<TranscriptEntry> transcript_;
  std::optional<OpenDelivery> open_;
  std::string pending_reveal_;
};

// Interrogative aimed at the bot ("what do you ...?", "are you ...").
bool is_question_to_bot(std::string_view utterance);

struct TriggerCandidate {
  std::string metaphor_id;
  std::string target;
};

/// Heuristic trigger model:
///   relevance = w_k * [keyword hit] + w_t * topic_similarity + w_q * qa_relevance
/// A keyword hit is the target or one of its nearest neighbours appearing in the
/// utterance; topic similarity is 1 minus the mean distance of the utterance's
/// content words to the target, clamped to [0, 1]; qa relevance is 0 when the
/// utterance is a question aimed at the bot.
class TriggerScorer {
 public:
  TriggerScorer(const EmbeddingStore& store, std::vector<TriggerCandidate> inventory,
                TokenSet stopwords, TriggerOptions options = {});

  // The best candidate and its features; never triggers, never draws.
  TriggerDecision evaluate(std::string_view utterance) const;
  // evaluate() plus the state guard, the threshold and a uniform form draw
  // from the session's generator.
  TriggerDecision decide(std::string_view utterance, Session& session) const;

  const TriggerOptions& options() const { return options_; }
  std::size_t inventory_size() const { return inventory_.size(); }

 private:
  TriggerFeatures features_for(const std::vector<std::string>& words,
                               const std::vector<std::size_t>& scorable, bool qa_question,
                               std::size_t target_slot) const;

  struct TargetInfo {
    std::string target;
    std::optional<std::size_t> index;
    TokenSet keywords;
  };

  const EmbeddingStore* store_;
  std::vector<TriggerCandidate> inventory_;
  std::vector<std::size_t> target_of_;  // inventory position -> targets_ slot
  std::vector<TargetInfo> targets_;
  TokenSet stopwords_;
  TriggerOptions options_;
};

TriggerDecision score_trigger(std::string_view utterance, Session& session,
                              std::span<const GeneratedMetaphor> inventory,
                              const EmbeddingStore& store, const TokenSet& stopwords,
                              const TriggerOptions& options = {});

}  // namespace figura
