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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "avalon/game/engine.hpp"

namespace avalon {

enum class EventKind {
  GameStart,
  HostInstruction,
  PublicResponse,
  PrivateResponse,
  PrivateAction,
  TeamProposal,
  TeamVoteBallot,
  QuestCardPlay,
  QuestOutcome,
  AssassinGuess,
  Winner,
  MemorySnapshot,
  GameAborted,
};

std::string_view event_kind_name(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view text);

/// One log line. `owner` is set for events only one seat may see.
struct GameEvent {
  std::uint64_t seq = 0;
  EventKind kind = EventKind::HostInstruction;
  int round = 0;
  std::optional<Seat> owner;
  nlohmann::json data = nlohmann::json::object();

  bool operator==(const GameEvent&) const = default;
};

nlohmann::json event_to_json(const GameEvent& event);
GameEvent event_from_json(const nlohmann::json& json);

/// Append-only record of one game. Sequence numbers are dense from 0.
class GameLog {
 public:
  GameLog() = default;
  explicit GameLog(std::vector<GameEvent> events);

  const GameEvent& append(EventKind kind, int round, std::optional<Seat> owner,
                          nlohmann::json data);

  const std::vector<GameEvent>& events() const { return events_; }
  std::vector<const GameEvent*> of_kind(EventKind kind) const;

  /// Fields of the GameStart event; throw Error when it is missing.
  std::string game_id() const;
  std::uint64_t seed() const;
  GameConfig config() const;
  RoleAssignment assignment() const;
  int strategy_version() const;

  /// Ends with a Winner event.
  bool complete() const;
  bool aborted() const;
  std::optional<Side> winner() const;

  /// One sorted-key JSON object per line, each terminated by '\n'.
  std::string to_jsonl() const;
  static GameLog from_jsonl(std::string_view text);
  void write(const std::filesystem::path& path) const;
  static GameLog read(const std::filesystem::path& path);

 private:
  std::vector<GameEvent> events_;
};

/// What `viewer` could observe: public events plus its own private lane.
/// Without a viewer only public events remain.
GameLog public_projection(const GameLog& log, std::optional<Seat> viewer = std::nullopt);

/// Re-drives the engine over the recorded proposals, votes, cards and
/// guesses. Throws Error (or the engine's RuleError/TransitionError) at the
/// first event that does not follow; returns the final state.
GameState validate_log(const GameLog& log);

/// Every *.jsonl file in `dir`, sorted by file name.
std::vector<GameLog> read_log_dir(const std::filesystem::path& dir);

nlohmann::json config_to_json(const GameConfig& config);
GameConfig config_from_json(const nlohmann::json& json);
nlohmann::json assignment_to_json(const RoleAssignment& assignment);
RoleAssignment assignment_from_json(const nlohmann::json& json);

}  // namespace avalon
