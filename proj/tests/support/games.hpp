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
#include <memory>
#include <mutex>
#include <vector>

#include "avalon/agent/pipeline.hpp"
#include "avalon/backend/backend.hpp"
#include "avalon/log/game_log.hpp"
#include "avalon/orchestrator/host.hpp"

namespace avalon::testing {

/// Forwards to an inner backend and keeps every request.
class TracingBackend final : public Backend {
 public:
  explicit TracingBackend(Backend& inner) : inner_(inner) {}
  std::string complete(const CompletionRequest& request) override;
  BackendKind kind() const override { return inner_.kind(); }

  std::vector<CompletionRequest> requests() const;
  std::size_t count(Purpose purpose) const;
  std::size_t count(Stage stage) const;

 private:
  Backend& inner_;
  mutable std::mutex mutex_;
  std::vector<CompletionRequest> requests_;
};

/// Six rule bots.
GameLog play_rule_bot_game(std::uint64_t seed);

/// Pipeline agents on `pipeline_seats` (all seats by default), rule bots on
/// the rest, every call going to `backend`.
GameLog play_pipeline_game(std::uint64_t seed, Backend& backend,
                           const PipelineSettings& settings = {},
                           std::array<bool, kPlayerCount> pipeline_seats = {true, true, true,
                                                                           true, true, true});

}  // namespace avalon::testing
