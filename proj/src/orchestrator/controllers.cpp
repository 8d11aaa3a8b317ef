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

#include "avalon/orchestrator/controllers.hpp"

#include <algorithm>

namespace avalon {
namespace {

bool contains(const std::vector<Seat>& seats, Seat seat) {
  return std::find(seats.begin(), seats.end(), seat) != seats.end();
}

}  // namespace

nlohmann::json PipelineController::describe() const {
  const RoleProfile& profile = agent_->profile();
  return {{"controller", kind()},
          {"role", role_key(profile.role)},
          {"introduction", profile.introduction},
          {"goal", profile.goal},
          {"strategy", profile.strategy},
          {"system_prompt", agent_->system_prompt()}};
}

RuleBot::RuleBot(Seat seat, const RoleAssignment& assignment, std::uint64_t seed)
    : seat_(seat),
      role_(assignment.role_of(seat)),
      rng_(derive_seed(seed, "rule-bot-" + std::to_string(seat.index()))) {
  const RevealView view = reveal_info(assignment, seat);
  if (view.known_evil_pair) {
    known_evil_ = {view.known_evil_pair->first, view.known_evil_pair->second};
  }
  if (view.known_partner) known_evil_ = {seat, view.known_partner->first};
}

nlohmann::json RuleBot::describe() const {
  return {{"controller", kind()}, {"role", role_key(role_)}};
}

Action RuleBot::choose_team(const ExtractionContext& ctx) {
  std::vector<Seat> team = {seat_};
  std::vector<Seat> pool;
  for (Seat s : ctx.candidates) {
    if (s == seat_) continue;
    // Evil bots avoid their partner so one Fail card suffices; good bots
    // avoid anyone they know to be evil.
    if (contains(known_evil_, s)) continue;
    pool.push_back(s);
  }
  rng_.shuffle(pool);
  for (Seat s : pool) {
    if (static_cast<int>(team.size()) == ctx.required_count) break;
    team.push_back(s);
  }
  return ChoosePlayers{random_fill(team, ctx.candidates, ctx.required_count, rng_)};
}

Action RuleBot::vote(const TurnInfo& info) {
  if (!info.team || info.attempt >= 4) return CastVote{Vote::Agree};
  const bool has_evil = std::any_of(info.team->begin(), info.team->end(),
                                    [&](Seat s) { return contains(known_evil_, s); });
  if (side_of(role_) == Side::Evil) {
    return CastVote{has_evil ? Vote::Agree : Vote::Disagree};
  }
  if (has_evil) return CastVote{Vote::Disagree};
  return CastVote{rng_.chance(4, 5) ? Vote::Agree : Vote::Disagree};
}

Action RuleBot::target(const ExtractionContext& ctx) {
  if (!ctx.mandatory && rng_.chance(1, 2)) return Silent{};
  std::vector<Seat> pool;
  for (Seat s : ctx.candidates) {
    if (!contains(known_evil_, s)) pool.push_back(s);
  }
  if (pool.empty()) pool = ctx.candidates;
  return ChoosePlayers{{pool[rng_.below(pool.size())]}};
}

TurnRecord RuleBot::take_turn(const HostInstruction& instruction, const ExtractionContext& ctx,
                              const TurnInfo& info, SeededRng&) {
  TurnRecord record;
  record.round = info.round;
  record.turn = info.turn;
  record.instruction = instruction;
  record.analysis.author = seat_;
  record.plan.author = seat_;
  switch (ctx.expected) {
    case Expected::PlayerChoice: record.action = choose_team(ctx); break;
    case Expected::TeamVote: record.action = vote(info); break;
    case Expected::QuestCard:
      record.action = PlayCard{rng_.chance(4, 5) ? QuestCard::Fail : QuestCard::Success};
      break;
    case Expected::Target: record.action = target(ctx); break;
    case Expected::NonVerbal:
    case Expected::FreeSpeech: record.action = Silent{}; break;
  }
  record.response = public_statement(record.action);
  return record;
}

}  // namespace avalon
