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
#include <set>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "avalon/agent/pipeline.hpp"
#include "avalon/experience/experience.hpp"
#include "avalon/extraction/extractor.hpp"
#include "avalon/game/engine.hpp"

namespace avalon {

/// Module switches. IS/AO drop experience learning steps, AM/Plan/Action
/// drop pipeline stages, the last two narrow the analysis prompt.
enum class Ablation {
  IS,
  AO,
  AM,
  Plan,
  Action,
  AnalysisTeammatesOnly,
  AnalysisAdversariesOnly,
};

std::string_view ablation_name(Ablation ablation);
std::optional<Ablation> parse_ablation(std::string_view text);

/// Who fills the seats outside the side under test.
enum class OpponentKind { RuleBot, Pipeline };
std::string_view opponent_kind_name(OpponentKind kind);
std::optional<OpponentKind> parse_opponent_kind(std::string_view text);

enum class BackendChoice { Scripted, Http, Replay };
std::string_view backend_choice_name(BackendChoice choice);
std::optional<BackendChoice> parse_backend_choice(std::string_view text);

enum class JudgeChoice { Rule, Backend };

struct BackendConfig {
  BackendChoice kind = BackendChoice::Scripted;
  /// Scripted: optional {"agent": [...], ...} queue file; the canned
  /// responder answers once a queue runs dry.
  std::optional<std::filesystem::path> script;
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string api_key_env = "AVALON_API_KEY";
  int max_attempts = 3;
  int max_in_flight = 4;
  int timeout_seconds = 120;
  /// Replay: directory holding the per-game exchange logs.
  std::optional<std::filesystem::path> replay_dir;
  /// Record every exchange next to the game logs.
  bool record = true;
};

struct AgentConfig {
  std::string model = "gpt-3.5-turbo-16k";
  double temperature = 0.3;
  double summarizer_temperature = 0.0;
  double extractor_temperature = 0.0;
  double judge_temperature = 0.0;
  int retry_budget = 2;
  std::size_t char_budget = 48000;
  int suggestion_count = kSuggestionCount;
};

struct DataConfig {
  std::optional<std::filesystem::path> prompts;
  std::optional<std::filesystem::path> role_profiles;
  std::optional<std::filesystem::path> demonstrations;
  std::optional<std::filesystem::path> strategy_store;
};

struct SeriesConfig {
  int num_games = 20;
  Side side_under_test = Side::Evil;
  bool learning_enabled = false;
  std::set<Ablation> ablations;
  OpponentKind opponents = OpponentKind::RuleBot;
  std::uint64_t seed = 0;
  int checkpoint_interval = 5;
  /// Parallel games; only honoured when learning is off.
  int workers = 1;
  JudgeChoice judge = JudgeChoice::Rule;
};

struct RunConfig {
  GameConfig game;
  SeriesConfig series;
  BackendConfig backend;
  AgentConfig agent;
  DataConfig data;

  /// Throws ConfigError listing the first problem.
  void validate() const;
  bool has(Ablation ablation) const { return series.ablations.count(ablation) > 0; }

  PipelineSettings pipeline_settings() const;
  LearningSettings learning_settings() const;
  ExtractorSettings extractor_settings() const;

  nlohmann::json to_json() const;
  /// Missing keys keep their defaults; unknown keys are errors.
  static RunConfig from_json(const nlohmann::json& json);
  static RunConfig load(const std::filesystem::path& path);
  /// SHA-256 of the sorted-key JSON form.
  std::string digest() const;
};

}  // namespace avalon
