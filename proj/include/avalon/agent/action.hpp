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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "avalon/game/types.hpp"

namespace avalon {

struct ChoosePlayers {
  std::vector<Seat> seats;
  bool operator==(const ChoosePlayers&) const = default;
};
struct CastVote {
  Vote vote;
  bool operator==(const CastVote&) const = default;
};
struct PlayCard {
  QuestCard card;
  bool operator==(const PlayCard&) const = default;
};
struct Signal {
  NonVerbal signal;
  bool operator==(const Signal&) const = default;
};
struct Silent {
  bool operator==(const Silent&) const = default;
};

/// Exactly one of the five move kinds an agent can take in a turn.
using Action = std::variant<ChoosePlayers, CastVote, PlayCard, Signal, Silent>;

/// What the host is asking for.
enum class Expected { PlayerChoice, TeamVote, QuestCard, NonVerbal, FreeSpeech, Target };

std::string_view expected_name(Expected expected);
std::optional<Expected> parse_expected(std::string_view text);

/// A host directive: stored in memory and handed to action selection.
struct HostInstruction {
  std::string text;
  std::optional<Expected> expected;
  int round = 1;
};

/// "choose players: Player 2, Player 4" -- fills the response template.
std::string describe_action(const Action& action);

/// One formulaic sentence that discloses only the public part of an action;
/// quest cards stay secret.
std::string public_statement(const Action& action);

nlohmann::json action_to_json(const Action& action);
Action action_from_json(const nlohmann::json& json);

/// "Player 2, Player 4"
std::string seat_list(const std::vector<Seat>& seats);

}  // namespace avalon
