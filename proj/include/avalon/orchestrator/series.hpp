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

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "avalon/analytics/metrics.hpp"
#include "avalon/experience/experience.hpp"
#include "avalon/orchestrator/config.hpp"
#include "avalon/orchestrator/host.hpp"

namespace avalon {

/// Prompts, role profiles and demonstrations, from files or the built-ins.
struct DataBundle {
  PromptLibrary prompts;
  ProfileSet profiles;
  nlohmann::json demonstrations;
};

DataBundle load_data(const DataConfig& data);

/// The backend for one game of a series.
using BackendFactory = std::function<std::unique_ptr<Backend>(int game_index)>;

/// Scripted (canned responder plus optional script queues), HTTP, or replay
/// from `backend.replay_dir`/game_NNN.jsonl.
BackendFactory default_backend_factory(const RunConfig& config);

/// "game_001" for index 0.
std::string game_name(int index);
std::uint64_t game_seed(std::uint64_t series_seed, int index);

/// Seats on the side under test are pipeline agents; the others follow
/// config.series.opponents.
std::array<bool, kPlayerCount> pipeline_seats(const RunConfig& config,
                                              const RoleAssignment& assignment);

/// Plays one configured game with the experience of `store` injected.
GameLog play_configured_game(const RunConfig& config, const GameSetup& setup, Backend& backend,
                             const DataBundle& data, const StrategyStore& store);

struct SeriesResult {
  std::vector<GameLog> logs;
  MetricsReport metrics;
  StrategyStore store;
  nlohmann::json manifest;
};

/// Runs config.series.num_games games. With learning the games run one
/// after another and the store learns after each finished game; without it
/// they may run on several workers. When `out_dir` is set the logs,
/// exchange logs (exchanges/), strategy stores, manifest and metrics are written there.
SeriesResult run_series(const RunConfig& config, const BackendFactory& factory,
                        const std::optional<std::filesystem::path>& out_dir = std::nullopt);

}  // namespace avalon
