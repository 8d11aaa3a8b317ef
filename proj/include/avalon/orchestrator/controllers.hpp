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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "avalon/agent/pipeline.hpp"
#include "avalon/game/engine.hpp"
#include "avalon/rng.hpp"

namespace avalon {

/// Public game facts handed to every turn.
struct TurnInfo {
  int round = 1;
  int turn = 0;
  Seat leader = Seat(1);
  int attempt = 1;
  std::optional<std::vector<Seat>> team;
  int good_points = 0;
  int evil_points = 0;
};

/// Whatever fills a seat.
class SeatController {
 public:
  virtual ~SeatController() = default;

  virtual Seat seat() const = 0;
  virtual std::string kind() const = 0;
  virtual void observe(const MemoryObject& object) = 0;
  virtual TurnRecord take_turn(const HostInstruction& instruction, const ExtractionContext& ctx,
                               const TurnInfo& info, SeededRng& rng) = 0;
  /// Round boundary.
  virtual void end_round(int round) = 0;
  /// The memory summary to snapshot after a round, if the seat keeps one.
  virtual std::optional<std::string> rolled_summary() const { return std::nullopt; }
  /// Role profile and system prompt, for seats driven by a backend.
  virtual nlohmann::json describe() const { return {{"controller", kind()}}; }
};

class PipelineController final : public SeatController {
 public:
  explicit PipelineController(std::unique_ptr<Agent> agent) : agent_(std::move(agent)) {}

  Seat seat() const override { return agent_->seat(); }
  std::string kind() const override { return "pipeline"; }
  void observe(const MemoryObject& object) override { agent_->observe(object); }
  TurnRecord take_turn(const HostInstruction& instruction, const ExtractionContext& ctx,
                       const TurnInfo& info, SeededRng& rng) override {
    return agent_->take_turn(instruction, ctx, rng, info.turn);
  }
  void end_round(int round) override { agent_->end_round(round); }
  std::optional<std::string> rolled_summary() const override {
    return agent_->memory().rolled_summary();
  }
  nlohmann::json describe() const override;

  Agent& agent() { return *agent_; }

 private:
  std::unique_ptr<Agent> agent_;
};

/// Deterministic scripted policy that knows only its reveal information.
/// Good bots avoid seats they know to be evil; evil bots back teams with an
/// evil member and fail quests most of the time.
class RuleBot final : public SeatController {
 public:
  RuleBot(Seat seat, const RoleAssignment& assignment, std::uint64_t seed);

  Seat seat() const override { return seat_; }
  std::string kind() const override { return "rule_bot"; }
  void observe(const MemoryObject&) override {}
  TurnRecord take_turn(const HostInstruction& instruction, const ExtractionContext& ctx,
                       const TurnInfo& info, SeededRng& rng) override;
  void end_round(int) override {}
  nlohmann::json describe() const override;

 private:
  Action choose_team(const ExtractionContext& ctx);
  Action vote(const TurnInfo& info);
  Action target(const ExtractionContext& ctx);

  Seat seat_;
  Role role_;
  /// Seats this bot knows to be evil (its partner, or Merlin's view).
  std::vector<Seat> known_evil_;
  SeededRng rng_;
};

}  // namespace avalon
