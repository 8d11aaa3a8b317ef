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

#include "avalon/game/engine.hpp"

#include <algorithm>
#include <string>

namespace avalon {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void expect_phase(const GameState& state, Phase expected, const EngineEvent& event) {
  if (state.phase != expected) {
    throw TransitionError(std::string(event_name(event)) + " is illegal in phase " +
                          std::string(phase_name(state.phase)) + "; expected phase " +
                          std::string(phase_name(expected)));
  }
}

void finish(GameState& next, Side winner, WinReason reason) {
  next.phase = Phase::Finished;
  next.winner = winner;
  next.win_reason = reason;
  next.current_team.reset();
  next.current_votes.reset();
}

void start_next_round(GameState& next) {
  next.round += 1;
  next.phase = Phase::Discussion;
  next.proposal_attempt = 1;
  next.team_votes_this_round = 0;
  next.leader = next_leader(next.leader);
  next.current_team.reset();
  next.current_votes.reset();
}

void begin_quest(GameState& next) { next.phase = Phase::Quest; }

void apply(GameState& next, const RevealComplete&) { next.phase = Phase::Discussion; }

void apply(GameState& next, const ProposeTeam& move) {
  if (move.leader != next.leader) {
    throw RuleError(player_name(move.leader) + " proposed a team but the leader is " +
                    player_name(next.leader));
  }
  const int wanted = next.config.team_size(next.round);
  if (static_cast<int>(move.team.size()) != wanted) {
    throw RuleError("round " + std::to_string(next.round) + " needs a team of " +
                    std::to_string(wanted) + ", got " + std::to_string(move.team.size()));
  }
  std::vector<Seat> unique = move.team;
  std::sort(unique.begin(), unique.end());
  if (std::adjacent_find(unique.begin(), unique.end()) != unique.end()) {
    throw RuleError("team lists a seat twice");
  }
  next.current_team = move.team;
  next.current_votes.reset();
  if (next.proposal_is_forced()) {
    begin_quest(next);
  } else {
    next.phase = Phase::TeamVote;
  }
}

void apply(GameState& next, const TeamVoteCast& move) {
  const VoteResult result = tally_team_vote(move.ballots);
  next.team_votes_this_round += 1;
  if (result == VoteResult::Pass) {
    next.current_votes = move.ballots;
    begin_quest(next);
    return;
  }
  // Rejected: the next seat leads a fresh discussion. proposal_is_forced()
  // guarantees no vote is ever held at the final attempt, so this stays in range.
  next.proposal_attempt += 1;
  next.leader = next_leader(next.leader);
  next.current_team.reset();
  next.current_votes.reset();
  next.phase = Phase::Discussion;
}

void apply(GameState& next, const QuestCardsPlayed& move) {
  const std::vector<Seat>& team = *next.current_team;
  for (const CardPlay& play : move.cards) {
    if (play.card == QuestCard::Fail && next.assignment.side_of(play.player) == Side::Good) {
      throw RuleError(player_name(play.player) + " is on the good side and cannot play Fail");
    }
  }
  const QuestOutcome outcome = resolve_quest(move.cards, team);

  QuestRecord record;
  record.round = next.round;
  record.team = team;
  record.team_votes = next.current_votes.value_or(std::vector<Ballot>{});
  record.proposal_attempts_used = next.proposal_attempt;
  record.cards = move.cards;
  record.outcome = outcome;
  next.quest_history.push_back(std::move(record));

  if (outcome == QuestOutcome::Succeeded) {
    next.good_points += 1;
  } else {
    next.evil_points += 1;
  }
  next.current_team.reset();
  next.current_votes.reset();

  if (next.evil_points >= next.config.points_to_win) {
    finish(next, Side::Evil, WinReason::QuestsFailed);
  } else if (next.good_points >= next.config.points_to_win || !next.assassin_exposed) {
    // Good at three points opens the final guess; otherwise the unexposed
    // Assassin gets an optional mid-game guess.
    next.phase = Phase::AssassinWindow;
  } else {
    start_next_round(next);
  }
}

void apply(GameState& next, const AssassinMove& move) {
  const AssassinationContext context = *next.assassination_window();
  AssassinationRecord record{next.round, context, move.guess, std::nullopt};

  if (!move.guess) {
    if (context == AssassinationContext::FinalWindow) {
      throw RuleError("the final assassination guess is mandatory");
    }
    next.assassinations.push_back(record);
    start_next_round(next);
    return;
  }

  const AssassinationResult result = assassinate(next.assignment, *move.guess, context);
  record.result = result;
  next.assassinations.push_back(record);
  switch (result) {
    case AssassinationResult::EvilWins:
      finish(next, Side::Evil, WinReason::Assassination);
      break;
    case AssassinationResult::GoodWins:
      finish(next, Side::Good, WinReason::QuestsSucceeded);
      break;
    case AssassinationResult::Exposed:
      next.assassin_exposed = true;
      start_next_round(next);
      break;
  }
}

}  // namespace

void GameConfig::validate() const {
  for (int size : quest_team_sizes) {
    if (size != 2 && size != 3) {
      throw ConfigError("quest team sizes must be 2 or 3, got " + std::to_string(size));
    }
  }
  if (max_proposals_per_round != 5) {
    throw ConfigError("max_proposals_per_round is fixed at 5");
  }
  if (points_to_win != 3) {
    throw ConfigError("points_to_win is fixed at 3");
  }
}

int GameConfig::team_size(int round) const {
  if (round < 1 || round > kRounds) {
    throw RuleError("round out of range: " + std::to_string(round));
  }
  return quest_team_sizes[static_cast<std::size_t>(round - 1)];
}

std::string_view phase_name(Phase phase) {
  switch (phase) {
    case Phase::Reveal: return "Reveal";
    case Phase::Discussion: return "Discussion";
    case Phase::TeamVote: return "TeamVote";
    case Phase::Quest: return "Quest";
    case Phase::AssassinWindow: return "AssassinWindow";
    case Phase::Finished: return "Finished";
  }
  return "?";
}

std::string_view win_reason_name(WinReason reason) {
  switch (reason) {
    case WinReason::QuestsSucceeded: return "quests_succeeded";
    case WinReason::QuestsFailed: return "quests_failed";
    case WinReason::Assassination: return "assassination";
  }
  return "?";
}

std::optional<WinReason> parse_win_reason(std::string_view text) {
  for (WinReason reason :
       {WinReason::QuestsSucceeded, WinReason::QuestsFailed, WinReason::Assassination}) {
    if (text == win_reason_name(reason)) return reason;
  }
  return std::nullopt;
}

GameState GameState::initial(const GameConfig& config, const RoleAssignment& assignment) {
  config.validate();
  GameState state{config, assignment};
  return state;
}

std::optional<AssassinationContext> GameState::assassination_window() const {
  if (phase != Phase::AssassinWindow) return std::nullopt;
  return good_points >= config.points_to_win ? AssassinationContext::FinalWindow
                                             : AssassinationContext::MidGame;
}

std::string_view event_name(const EngineEvent& event) {
  return std::visit(Overloaded{
                        [](const RevealComplete&) { return std::string_view("RevealComplete"); },
                        [](const ProposeTeam&) { return std::string_view("ProposeTeam"); },
                        [](const TeamVoteCast&) { return std::string_view("TeamVoteCast"); },
                        [](const QuestCardsPlayed&) { return std::string_view("QuestCardsPlayed"); },
                        [](const AssassinMove&) { return std::string_view("AssassinMove"); },
                    },
                    event);
}

GameState advance(const GameState& state, const EngineEvent& event) {
  GameState next = state;
  std::visit(Overloaded{
                 [&](const RevealComplete& e) {
                   expect_phase(state, Phase::Reveal, event);
                   apply(next, e);
                 },
                 [&](const ProposeTeam& e) {
                   expect_phase(state, Phase::Discussion, event);
                   apply(next, e);
                 },
                 [&](const TeamVoteCast& e) {
                   expect_phase(state, Phase::TeamVote, event);
                   apply(next, e);
                 },
                 [&](const QuestCardsPlayed& e) {
                   expect_phase(state, Phase::Quest, event);
                   apply(next, e);
                 },
                 [&](const AssassinMove& e) {
                   expect_phase(state, Phase::AssassinWindow, event);
                   apply(next, e);
                 },
             },
             event);
  return next;
}

}  // namespace avalon
