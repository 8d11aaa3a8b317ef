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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avalon/agent/action.hpp"
#include "avalon/agent/profile.hpp"
#include "avalon/agent/templates.hpp"
#include "avalon/backend/backend.hpp"
#include "avalon/extraction/extractor.hpp"
#include "avalon/memory/memory.hpp"
#include "avalon/rng.hpp"

namespace avalon {

struct AnalysisReport {
  Seat author = Seat(1);
  int round = 1;
  /// Empty when the analysis module is disabled.
  std::string content;
};

struct Plan {
  Seat author = Seat(1);
  int round = 1;
  /// Empty when the planning module is disabled.
  std::string content;
};

/// Which players the analysis prompt asks about.
enum class AnalysisScope { AllPlayers, TeammatesOnly, AdversariesOnly };

std::string_view analysis_scope_name(AnalysisScope scope);
std::optional<AnalysisScope> parse_analysis_scope(std::string_view text);

struct PipelineSettings {
  bool analysis_enabled = true;
  bool planning_enabled = true;
  /// Off: no action-stage call; the action is read from the response.
  bool action_enabled = true;
  AnalysisScope analysis_scope = AnalysisScope::AllPlayers;
  std::string model = "gpt-3.5-turbo-16k";
  double temperature = 0.3;
  std::string summarizer_model = "gpt-3.5-turbo-16k";
  double summarizer_temperature = 0.0;
  /// Retries of a failed call before the turn degrades.
  int retry_budget = 2;
  /// A memory rendering longer than this is summarized before the turn.
  std::size_t char_budget = 48000;
  std::size_t summary_cap = kSummaryHardCap;
};

/// Game rules, then the role block for `seat`. `instructions` replaces the
/// default game-rules text when non-empty (for experience injection).
std::string compose_system_prompt(const PromptLibrary& prompts, const RoleProfile& profile,
                                  Seat seat, std::string_view instructions = {});

/// Text for the {Summary} slots: the rolled summary, then the current round.
std::string render_memory(const MemoryView& view);

/// Everything one agent turn produced.
struct TurnRecord {
  int round = 1;
  int turn = 0;
  HostInstruction instruction;
  AnalysisReport analysis;
  Plan plan;
  /// Raw action-stage text; empty when that stage is disabled.
  std::string action_text;
  Action action = Silent{};
  std::string response;
  /// Set when a retryable failure outlasted the retry budget.
  bool degraded = false;
  std::string failure;
};

/// One seat's cognition. Every prompt is rebuilt from the memory view and
/// the stored reports, so the backend holds no conversation state.
class Agent {
 public:
  Agent(Seat seat, RoleProfile profile, std::string system_prompt, Backend& backend,
        const PromptLibrary& prompts, ActionExtractor& extractor, PipelineSettings settings = {});

  Seat seat() const { return seat_; }
  const RoleProfile& profile() const { return profile_; }
  const std::string& system_prompt() const { return system_prompt_; }
  const PipelineSettings& settings() const { return settings_; }
  MemoryStore& memory() { return memory_; }
  const MemoryStore& memory() const { return memory_; }

  void observe(const MemoryObject& object) { memory_.record(object); }

  AnalysisReport analyze(int round, int turn);
  /// The previous plan is the latest plan from an earlier round.
  Plan plan(const AnalysisReport& analysis, int round, int turn);
  std::string decide_action_text(const AnalysisReport& analysis, const Plan& plan,
                                 const HostInstruction& instruction, int turn);
  std::string respond(const Plan& plan, const HostInstruction& instruction,
                      const std::string& actions, int turn);

  /// analyze -> plan -> decide_action -> respond. Non-retryable backend
  /// errors propagate.
  TurnRecord take_turn(const HostInstruction& instruction, const ExtractionContext& ctx,
                       SeededRng& rng, int turn);

  /// Round boundary: one summarizer call, then the memory rolls. Returns
  /// false when the summarizer kept failing; the memory is then unchanged.
  bool end_round(int round);

  /// Rolled summary after each finished round, oldest first.
  const std::vector<std::string>& round_summaries() const { return round_summaries_; }
  const std::vector<Plan>& plans() const { return plans_; }
  /// "None" before the first round's plan exists.
  std::string previous_plan_text(int round) const;

 private:
  std::string call(Stage stage, Purpose purpose, const std::string& user, int round, int turn);
  std::string role_information() const;
  bool summarize(Stage stage, int round, int turn);

  Seat seat_;
  RoleProfile profile_;
  std::string system_prompt_;
  Backend* backend_;
  const PromptLibrary* prompts_;
  ActionExtractor* extractor_;
  PipelineSettings settings_;
  MemoryStore memory_;
  int current_round_ = 1;
  std::vector<Plan> plans_;
  std::vector<std::string> round_summaries_;
};

}  // namespace avalon
