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

#include "avalon/game/rules.hpp"

#include <algorithm>
#include <string>

#include "avalon/rng.hpp"

namespace avalon {
namespace {

constexpr std::array<Role, kPlayerCount> kRoleMultiset = {
    Role::Merlin, Role::Percival, Role::LoyalServant, Role::LoyalServant,
    Role::Morgana, Role::Assassin};

std::array<Role, kPlayerCount> sorted(std::array<Role, kPlayerCount> roles) {
  std::sort(roles.begin(), roles.end());
  return roles;
}

}  // namespace

RoleAssignment::RoleAssignment(const std::array<Role, kPlayerCount>& roles) : roles_(roles) {
  if (sorted(roles) != sorted(kRoleMultiset)) {
    throw RuleError("role assignment is not a permutation of the six-player role set");
  }
}

std::vector<Seat> RoleAssignment::seats_of(Role role) const {
  std::vector<Seat> seats;
  for (Seat seat : kAllSeats) {
    if (role_of(seat) == role) seats.push_back(seat);
  }
  return seats;
}

Seat RoleAssignment::seat_of(Role role) const {
  const auto seats = seats_of(role);
  if (seats.size() != 1) {
    throw RuleError(std::string(role_name(role)) + " is not held by exactly one seat");
  }
  return seats.front();
}

std::vector<Seat> RoleAssignment::seats_on(Side side) const {
  std::vector<Seat> seats;
  for (Seat seat : kAllSeats) {
    if (side_of(seat) == side) seats.push_back(seat);
  }
  return seats;
}

RoleAssignment assign_roles(std::uint64_t seed) {
  auto roles = kRoleMultiset;
  SeededRng rng(derive_seed(seed, "roles"));
  rng.shuffle(roles);
  return RoleAssignment(roles);
}

RevealView reveal_info(const RoleAssignment& assignment, Seat viewer) {
  RevealView view{viewer, std::nullopt, std::nullopt, std::nullopt};
  switch (assignment.role_of(viewer)) {
    case Role::Merlin:
      view.known_evil_pair =
          SeatPair(assignment.seat_of(Role::Morgana), assignment.seat_of(Role::Assassin));
      break;
    case Role::Percival:
      view.known_merlin_morgana_pair =
          SeatPair(assignment.seat_of(Role::Merlin), assignment.seat_of(Role::Morgana));
      break;
    case Role::Morgana:
      view.known_partner = {assignment.seat_of(Role::Assassin), Role::Assassin};
      break;
    case Role::Assassin:
      view.known_partner = {assignment.seat_of(Role::Morgana), Role::Morgana};
      break;
    case Role::LoyalServant:
      break;
  }
  return view;
}

VoteResult tally_team_vote(std::span<const Ballot> ballots) {
  std::array<bool, kPlayerCount> seen{};
  int agree = 0;
  for (const Ballot& ballot : ballots) {
    if (seen[ballot.voter.slot()]) {
      throw RuleError("malformed ballot: " + player_name(ballot.voter) + " voted twice");
    }
    seen[ballot.voter.slot()] = true;
    if (ballot.vote == Vote::Agree) ++agree;
  }
  if (ballots.size() != kPlayerCount) {
    throw RuleError("malformed ballot: expected 6 votes, got " + std::to_string(ballots.size()));
  }
  return agree * 2 > kPlayerCount ? VoteResult::Pass : VoteResult::Reject;
}

QuestOutcome resolve_quest(std::span<const CardPlay> cards, std::span<const Seat> team) {
  std::array<bool, kPlayerCount> on_team{};
  for (Seat seat : team) on_team[seat.slot()] = true;

  std::array<bool, kPlayerCount> played{};
  bool any_fail = false;
  for (const CardPlay& play : cards) {
    if (!on_team[play.player.slot()]) {
      throw RuleError("quest card from non-team seat " + player_name(play.player));
    }
    if (played[play.player.slot()]) {
      throw RuleError("two quest cards from " + player_name(play.player));
    }
    played[play.player.slot()] = true;
    any_fail = any_fail || play.card == QuestCard::Fail;
  }
  for (Seat seat : team) {
    if (!played[seat.slot()]) {
      throw RuleError("missing quest card from " + player_name(seat));
    }
  }
  return any_fail ? QuestOutcome::Failed : QuestOutcome::Succeeded;
}

AssassinationResult assassinate(const RoleAssignment& assignment, Seat guess,
                                AssassinationContext context) {
  if (assignment.role_of(guess) == Role::Assassin) {
    throw RuleError("the Assassin cannot name their own seat");
  }
  if (assignment.role_of(guess) == Role::Merlin) return AssassinationResult::EvilWins;
  return context == AssassinationContext::MidGame ? AssassinationResult::Exposed
                                                  : AssassinationResult::GoodWins;
}

std::string_view context_name(AssassinationContext context) {
  return context == AssassinationContext::MidGame ? "mid_game" : "final_window";
}

std::string_view assassination_result_name(AssassinationResult result) {
  switch (result) {
    case AssassinationResult::EvilWins: return "evil_wins";
    case AssassinationResult::Exposed: return "exposed";
    case AssassinationResult::GoodWins: return "good_wins";
  }
  return "?";
}

std::optional<AssassinationContext> parse_context(std::string_view text) {
  if (text == "mid_game") return AssassinationContext::MidGame;
  if (text == "final_window") return AssassinationContext::FinalWindow;
  return std::nullopt;
}

std::optional<AssassinationResult> parse_assassination_result(std::string_view text) {
  if (text == "evil_wins") return AssassinationResult::EvilWins;
  if (text == "exposed") return AssassinationResult::Exposed;
  if (text == "good_wins") return AssassinationResult::GoodWins;
  return std::nullopt;
}

}  // namespace avalon
