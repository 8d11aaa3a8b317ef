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

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "avalon/game/rules.hpp"

namespace avalon {

inline constexpr int kRounds = 5;

struct GameConfig {
  std::array<int, kRounds> quest_team_sizes = {2, 3, 3, 3, 3};
  int max_proposals_per_round = 5;
  int points_to_win = 3;
  std::uint64_t seed = 0;

  /// Throws ConfigError when a field leaves the fixed rule set.
  void validate() const;
  /// Team size for a 1-based round.
  int team_size(int round) const;
};

enum class Phase { Reveal, Discussion, TeamVote, Quest, AssassinWindow, Finished };
std::string_view phase_name(Phase phase);

enum class WinReason { QuestsSucceeded, QuestsFailed, Assassination };
std::string_view win_reason_name(WinReason reason);
std::optional<WinReason> parse_win_reason(std::string_view text);

struct QuestRecord {
  int round = 0;
  std::vector<Seat> team;
  /// Empty when the fifth proposal assigned the team without a vote.
  std::vector<Ballot> team_votes;
  int proposal_attempts_used = 0;
  std::vector<CardPlay> cards;
  QuestOutcome outcome = QuestOutcome::Succeeded;
};

struct AssassinationRecord {
  int round = 0;
  AssassinationContext context = AssassinationContext::MidGame;
  /// nullopt: the Assassin passed on an optional mid-game guess.
  std::optional<Seat> guess;
  std::optional<AssassinationResult> result;
};

struct GameState {
  GameConfig config;
  RoleAssignment assignment;
  int round = 1;
  Phase phase = Phase::Reveal;
  Seat leader = Seat(1);
  int proposal_attempt = 1;
  int good_points = 0;
  int evil_points = 0;
  std::optional<std::vector<Seat>> current_team;
  std::optional<std::vector<Ballot>> current_votes;
  std::vector<QuestRecord> quest_history;
  std::vector<AssassinationRecord> assassinations;
  /// Team votes actually held in the current round.
  int team_votes_this_round = 0;
  bool assassin_exposed = false;
  std::optional<Side> winner;
  std::optional<WinReason> win_reason;

  /// Round 1, Reveal phase, seat 1 leading.
  static GameState initial(const GameConfig& config, const RoleAssignment& assignment);

  /// Which guess the Assassin is being offered, if the phase is AssassinWindow.
  std::optional<AssassinationContext> assassination_window() const;
  /// True when the current proposal skips the vote.
  bool proposal_is_forced() const { return proposal_attempt == config.max_proposals_per_round; }
};

struct RevealComplete {};

struct ProposeTeam {
  Seat leader;
  std::vector<Seat> team;
};

struct TeamVoteCast {
  std::vector<Ballot> ballots;
};

struct QuestCardsPlayed {
  std::vector<CardPlay> cards;
};

struct AssassinMove {
  std::optional<Seat> guess;
};

using EngineEvent =
    std::variant<RevealComplete, ProposeTeam, TeamVoteCast, QuestCardsPlayed, AssassinMove>;

std::string_view event_name(const EngineEvent& event);

/// Pure transition. Throws TransitionError when the event does not belong to
/// the current phase and RuleError when its content is illegal.
GameState advance(const GameState& state, const EngineEvent& event);

}  // namespace avalon
