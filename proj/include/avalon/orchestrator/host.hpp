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
#include <map>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "avalon/agent/pipeline.hpp"
#include "avalon/backend/backend.hpp"
#include "avalon/log/game_log.hpp"
#include "avalon/orchestrator/controllers.hpp"

namespace avalon {

struct GameSetup {
  std::string game_id = "game";
  std::uint64_t seed = 0;
  GameConfig config;
  RoleAssignment assignment = assign_roles(0);
  int strategy_version = 0;
  /// Merged into the game_start event.
  nlohmann::json extra = nlohmann::json::object();

  static GameSetup from_seed(std::string game_id, std::uint64_t seed,
                             const GameConfig& config = {});
};

using Controllers = std::array<std::unique_ptr<SeatController>, kPlayerCount>;

struct RunOptions {
  /// Rethrow non-retryable backend failures instead of logging an abort.
  bool rethrow_fatal = false;
};

/// Plays one game to the end. Non-retryable backend failures end the log
/// with a game_aborted event instead of a winner.
GameLog run_game(const GameSetup& setup, Controllers& controllers, const PromptLibrary& prompts,
                 RunOptions options = {});

/// What the pipeline seats of a game share.
struct PipelineKit {
  Backend* backend = nullptr;
  const PromptLibrary* prompts = nullptr;
  ActionExtractor* extractor = nullptr;
  PipelineSettings settings;
};

/// Pipeline agents on `pipeline_seats`, rule bots elsewhere. `instructions`
/// holds per-role game-rules text with experience injected; a missing role
/// gets the default rules.
Controllers make_controllers(const GameSetup& setup, const std::array<bool, kPlayerCount>& pipeline_seats,
                             const ProfileSet& profiles,
                             const std::map<Role, std::string>& instructions,
                             const PipelineKit& kit);

nlohmann::json pipeline_settings_to_json(const PipelineSettings& settings);
PipelineSettings pipeline_settings_from_json(const nlohmann::json& json);
nlohmann::json extractor_settings_to_json(const ExtractorSettings& settings);
ExtractorSettings extractor_settings_from_json(const nlohmann::json& json);

/// Rebuilds the controllers a recorded game used, bound to `backend`.
/// `extractor` must outlive the controllers.
Controllers controllers_from_log(const GameLog& log, Backend& backend,
                                 const PromptLibrary& prompts, ActionExtractor& extractor);
GameSetup setup_from_log(const GameLog& log);

/// Re-runs a recorded game against its exchange log. The returned log is
/// byte-identical to the recording when nothing changed; a digest mismatch
/// surfaces as ReplayMismatch.
GameLog replay_game(const GameLog& recorded, const std::filesystem::path& exchange_log,
                    const PromptLibrary& prompts);

}  // namespace avalon
