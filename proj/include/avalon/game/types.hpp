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
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "avalon/error.hpp"

namespace avalon {

inline constexpr int kPlayerCount = 6;

enum class Role { Merlin, Percival, LoyalServant, Morgana, Assassin };
enum class Side { Good, Evil };

inline constexpr std::array<Role, 5> kAllRoles = {
    Role::Merlin, Role::Percival, Role::LoyalServant, Role::Morgana, Role::Assassin};

constexpr Side side_of(Role role) {
  return (role == Role::Morgana || role == Role::Assassin) ? Side::Evil : Side::Good;
}

/// A player's position at the table, 1..6.
class Seat {
 public:
  constexpr explicit Seat(int index) : index_(index) {
    if (index < 1 || index > kPlayerCount) {
      throw RuleError("seat index out of range: " + std::to_string(index));
    }
  }

  constexpr int index() const { return index_; }
  /// Zero-based position, for indexing per-seat arrays.
  constexpr std::size_t slot() const { return static_cast<std::size_t>(index_ - 1); }

  constexpr auto operator<=>(const Seat&) const = default;

 private:
  int index_;
};

inline constexpr std::array<Seat, kPlayerCount> kAllSeats = {Seat(1), Seat(2), Seat(3),
                                                             Seat(4), Seat(5), Seat(6)};

enum class Vote { Agree, Disagree };
enum class QuestCard { Success, Fail };
enum class QuestOutcome { Succeeded, Failed };
enum class NonVerbal { RaiseHands, LowerHands, OpenEyes, CloseEyes };

/// "Player 3" -- the name agents and the host use for a seat.
std::string player_name(Seat seat);

std::string_view role_name(Role role);   // "Loyal Servant"
std::string_view role_key(Role role);    // "loyal_servant"
std::string_view side_name(Side side);   // "good"
std::string_view vote_name(Vote vote);   // "agree"
std::string_view card_name(QuestCard card);
std::string_view outcome_name(QuestOutcome outcome);
std::string_view nonverbal_name(NonVerbal signal);

/// Inverse of the *_key/*_name functions; accept either spelling, case-insensitive.
std::optional<Role> parse_role(std::string_view text);
std::optional<Side> parse_side(std::string_view text);
std::optional<Vote> parse_vote(std::string_view text);
std::optional<QuestCard> parse_card(std::string_view text);
std::optional<QuestOutcome> parse_outcome(std::string_view text);
std::optional<NonVerbal> parse_nonverbal(std::string_view text);

}  // namespace avalon
