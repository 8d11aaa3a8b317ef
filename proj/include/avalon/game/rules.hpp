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

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "avalon/game/types.hpp"

namespace avalon {

/// Seat -> role, bijective onto {Merlin, Percival, 2x Loyal Servant,
/// Morgana, Assassin}.
class RoleAssignment {
 public:
  /// Throws RuleError unless `roles` is a permutation of the fixed multiset.
  explicit RoleAssignment(const std::array<Role, kPlayerCount>& roles);

  Role role_of(Seat seat) const { return roles_[seat.slot()]; }
  Side side_of(Seat seat) const { return avalon::side_of(role_of(seat)); }
  /// Every seat holding `role`, ascending (two for Loyal Servant).
  std::vector<Seat> seats_of(Role role) const;
  /// The unique seat of a unique role. Throws RuleError for Loyal Servant.
  Seat seat_of(Role role) const;
  std::vector<Seat> seats_on(Side side) const;

  const std::array<Role, kPlayerCount>& roles() const { return roles_; }

  bool operator==(const RoleAssignment&) const = default;

 private:
  std::array<Role, kPlayerCount> roles_;
};

/// Deterministic seat->role shuffle for a seed.
RoleAssignment assign_roles(std::uint64_t seed);

/// An unordered pair of seats, stored ascending.
struct SeatPair {
  Seat first;
  Seat second;

  SeatPair(Seat a, Seat b) : first(std::min(a, b)), second(std::max(a, b)) {}
  bool contains(Seat s) const { return s == first || s == second; }
  bool operator==(const SeatPair&) const = default;
};

/// What the reveal phase shows one seat.
struct RevealView {
  Seat viewer;
  std::optional<SeatPair> known_evil_pair;           // Merlin
  std::optional<SeatPair> known_merlin_morgana_pair;  // Percival
  std::optional<std::pair<Seat, Role>> known_partner;  // Morgana / Assassin

  bool operator==(const RevealView&) const = default;
};

RevealView reveal_info(const RoleAssignment& assignment, Seat viewer);

struct Ballot {
  Seat voter;
  Vote vote;
};

enum class VoteResult { Pass, Reject };

/// Pass iff strictly more than half of the six votes agree. Throws
/// RuleError on a missing or duplicated voter.
VoteResult tally_team_vote(std::span<const Ballot> ballots);

struct CardPlay {
  Seat player;
  QuestCard card;
};

/// Succeeded iff every card is Success. Cards must cover exactly `team`;
/// anything else throws RuleError.
QuestOutcome resolve_quest(std::span<const CardPlay> cards, std::span<const Seat> team);

constexpr Seat next_leader(Seat current) { return Seat(current.index() % kPlayerCount + 1); }

enum class AssassinationContext { MidGame, FinalWindow };
enum class AssassinationResult { EvilWins, Exposed, GoodWins };

/// Resolves a guess at Merlin's seat. A wrong guess exposes the Assassin in
/// MidGame and hands the win to Good in the FinalWindow.
AssassinationResult assassinate(const RoleAssignment& assignment, Seat guess,
                                AssassinationContext context);

std::string_view context_name(AssassinationContext context);
std::string_view assassination_result_name(AssassinationResult result);
std::optional<AssassinationContext> parse_context(std::string_view text);
std::optional<AssassinationResult> parse_assassination_result(std::string_view text);

}  // namespace avalon
