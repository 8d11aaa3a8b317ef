// Copyright 2026 The Avalon Agents Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "avalon/agent/action.hpp"
#include "avalon/agent/templates.hpp"
#include "avalon/backend/backend.hpp"
#include "avalon/rng.hpp"

namespace avalon {

/// What a turn must produce and how hard to try.
struct ExtractionContext {
  Expected expected = Expected::FreeSpeech;
  /// PlayerChoice: how many seats the quest needs.
  int required_count = 0;
  /// PlayerChoice / Target: legal seats.
  std::vector<Seat> candidates;
  /// Target: whether the Assassin may pass.
  bool mandatory = true;
  /// The speaking seat, so "myself" resolves.
  std::optional<Seat> self;
  int retry_budget = 2;

  static ExtractionContext player_choice(int required_count, std::vector<Seat> candidates);
  static ExtractionContext of(Expected expected);
  static ExtractionContext target(std::vector<Seat> candidates, bool mandatory);

  /// Throws ConfigError for a PlayerChoice count outside {2,3} or candidates
  /// that cannot satisfy it.
  void validate() const;
};

/// Asks the agent again; receives the 1-based re-ask number.
using Reasker = std::function<std::string(int attempt)>;

/// Keyword and pattern extraction. Always available, never calls a backend.
namespace rule_extract {

/// Seats named in the text ("Player 3", "player3", "seat 3", "players 2 and
/// 4", and "myself" when `self` is set), in first-mention order, without
/// duplicates.
std::vector<Seat> mentioned_seats(std::string_view text, std::optional<Seat> self = std::nullopt);
/// nullopt when the stance is unclear.
std::optional<Vote> team_vote(std::string_view text);
/// nullopt when unclear (neither or both stances).
std::optional<QuestCard> quest_card(std::string_view text);
std::optional<NonVerbal> nonverbal(std::string_view text);
bool declares_silence(std::string_view text);
/// Catch-all parse for free speech.
Action free_speech(std::string_view text, std::optional<Seat> self);

}  // namespace rule_extract

struct ExtractorSettings {
  std::string model = "gpt-3.5-turbo-16k";
  double temperature = 0.0;
  /// Retries of a failed extractor call before falling back to the rules.
  int retry_budget = 2;
};

/// Turns freeform agent text into a structured Action. With a backend, an
/// LLM prompted with few-shot demonstrations reads the text first and the
/// rule layer catches anything it cannot answer; without one only the rules
/// run. Unclear answers resolve to the fixed defaults: team vote -> Agree,
/// quest card -> Fail, too many players -> truncated in mention order, too
/// few after every re-ask -> seeded random fill.
class ActionExtractor {
 public:
  /// `backend` may be null.
  ActionExtractor(Backend* backend, const PromptLibrary& prompts,
                  nlohmann::json demonstrations, ExtractorSettings settings = {});

  /// Rule layer only, default prompts and demonstrations.
  static ActionExtractor rules_only();

  std::vector<Seat> extract_players(const std::string& text, const ExtractionContext& ctx,
                                    const Reasker& reask, SeededRng& rng, CallTag tag = {});
  Vote extract_team_vote(const std::string& text, CallTag tag = {});
  QuestCard extract_quest_card(const std::string& text, CallTag tag = {});
  std::optional<NonVerbal> extract_nonverbal(const std::string& text, CallTag tag = {});
  /// nullopt: the Assassin passes (only when !ctx.mandatory).
  std::optional<Seat> extract_target(const std::string& text, const ExtractionContext& ctx,
                                     const Reasker& reask, SeededRng& rng, CallTag tag = {});

  /// Dispatches on ctx.expected and wraps the result as an Action.
  Action extract(const std::string& text, const ExtractionContext& ctx, const Reasker& reask,
                 SeededRng& rng, CallTag tag = {});

  /// What a turn falls back to when the agent could not be asked at all.
  static Action default_action(const ExtractionContext& ctx, SeededRng& rng);

  /// The rendered extractor prompt for a kind; exposed for inspection.
  std::string render_prompt(Expected kind, const std::string& text, int required_count) const;

 private:
  /// The extractor's answer, or nullopt when no backend or every attempt failed.
  std::optional<std::string> ask(Expected kind, const std::string& text, int required_count,
                                 CallTag tag);
  std::vector<Seat> parse_players(const std::string& text, const ExtractionContext& ctx,
                                  CallTag tag);

  Backend* backend_;
  const PromptLibrary* prompts_;
  nlohmann::json demonstrations_;
  ExtractorSettings settings_;
};

/// Compiled-in demonstrations from data/demonstrations.json.
const nlohmann::json& default_demonstrations();

/// Random legal completion of `chosen` up to `count` from `candidates`.
std::vector<Seat> random_fill(std::vector<Seat> chosen, const std::vector<Seat>& candidates,
                              int count, SeededRng& rng);

}  // namespace avalon
