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

#include "avalon/orchestrator/config.hpp"

#include <fstream>
#include <initializer_list>

#include "avalon/error.hpp"
#include "avalon/log/game_log.hpp"

namespace avalon {
namespace {

constexpr Ablation kAllAblations[] = {Ablation::IS,   Ablation::AO,
                                      Ablation::AM,   Ablation::Plan,
                                      Ablation::Action, Ablation::AnalysisTeammatesOnly,
                                      Ablation::AnalysisAdversariesOnly};

void check_keys(const nlohmann::json& json, std::string_view section,
                std::initializer_list<std::string_view> allowed) {
  if (!json.is_object()) throw ConfigError(std::string(section) + " must be an object");
  for (const auto& [key, value] : json.items()) {
    bool known = false;
    for (std::string_view name : allowed) known = known || key == name;
    if (!known) throw ConfigError("unknown key " + std::string(section) + "." + key);
  }
}

template <typename T>
void read(const nlohmann::json& json, const char* key, T& target) {
  if (!json.contains(key)) return;
  try {
    target = json.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("bad value for ") + key + ": " + json.at(key).dump());
  }
}

void read_path(const nlohmann::json& json, const char* key,
               std::optional<std::filesystem::path>& target) {
  if (!json.contains(key) || json.at(key).is_null()) return;
  target = json.at(key).get<std::string>();
}

nlohmann::json path_json(const std::optional<std::filesystem::path>& path) {
  return path ? nlohmann::json(path->string()) : nlohmann::json(nullptr);
}

}  // namespace

std::string_view ablation_name(Ablation ablation) {
  switch (ablation) {
    case Ablation::IS: return "IS";
    case Ablation::AO: return "AO";
    case Ablation::AM: return "AM";
    case Ablation::Plan: return "Plan";
    case Ablation::Action: return "Action";
    case Ablation::AnalysisTeammatesOnly: return "AnalysisTeammatesOnly";
    case Ablation::AnalysisAdversariesOnly: return "AnalysisAdversariesOnly";
  }
  return "?";
}

std::optional<Ablation> parse_ablation(std::string_view text) {
  for (Ablation ablation : kAllAblations) {
    if (text == ablation_name(ablation)) return ablation;
  }
  return std::nullopt;
}

std::string_view opponent_kind_name(OpponentKind kind) {
  return kind == OpponentKind::RuleBot ? "rule_bot" : "pipeline";
}

std::optional<OpponentKind> parse_opponent_kind(std::string_view text) {
  if (text == "rule_bot") return OpponentKind::RuleBot;
  if (text == "pipeline") return OpponentKind::Pipeline;
  return std::nullopt;
}

std::string_view backend_choice_name(BackendChoice choice) {
  switch (choice) {
    case BackendChoice::Scripted: return "scripted";
    case BackendChoice::Http: return "http";
    case BackendChoice::Replay: return "replay";
  }
  return "?";
}

std::optional<BackendChoice> parse_backend_choice(std::string_view text) {
  for (BackendChoice choice : {BackendChoice::Scripted, BackendChoice::Http, BackendChoice::Replay}) {
    if (text == backend_choice_name(choice)) return choice;
  }
  return std::nullopt;
}

void RunConfig::validate() const {
  game.validate();
  if (series.num_games < 1) throw ConfigError("series.num_games must be at least 1");
  if (series.checkpoint_interval < 1) {
    throw ConfigError("series.checkpoint_interval must be at least 1");
  }
  if (series.workers < 1) throw ConfigError("series.workers must be at least 1");
  if (has(Ablation::AnalysisTeammatesOnly) && has(Ablation::AnalysisAdversariesOnly)) {
    throw ConfigError("AnalysisTeammatesOnly and AnalysisAdversariesOnly exclude each other");
  }
  if ((has(Ablation::IS) || has(Ablation::AO)) && !series.learning_enabled) {
    throw ConfigError("the IS and AO ablations need learning enabled");
  }
  if (agent.suggestion_count != kSuggestionCount) {
    throw ConfigError("agent.suggestion_count is fixed at 3");
  }
  for (double t : {agent.temperature, agent.summarizer_temperature, agent.extractor_temperature,
                   agent.judge_temperature}) {
    if (t < 0.0 || t > 2.0) throw ConfigError("temperatures must lie in [0, 2]");
  }
  if (agent.retry_budget < 0) throw ConfigError("agent.retry_budget must be non-negative");
  if (agent.char_budget < 1000) throw ConfigError("agent.char_budget must be at least 1000");
  if (backend.max_attempts < 1) throw ConfigError("backend.max_attempts must be at least 1");
  if (backend.max_in_flight < 1) throw ConfigError("backend.max_in_flight must be at least 1");
  if (backend.kind == BackendChoice::Replay && !backend.replay_dir) {
    throw ConfigError("a replay backend needs backend.replay_dir");
  }
}

PipelineSettings RunConfig::pipeline_settings() const {
  PipelineSettings settings;
  settings.analysis_enabled = !has(Ablation::AM);
  settings.planning_enabled = !has(Ablation::Plan);
  settings.action_enabled = !has(Ablation::Action);
  if (has(Ablation::AnalysisTeammatesOnly)) settings.analysis_scope = AnalysisScope::TeammatesOnly;
  if (has(Ablation::AnalysisAdversariesOnly)) {
    settings.analysis_scope = AnalysisScope::AdversariesOnly;
  }
  settings.model = agent.model;
  settings.temperature = agent.temperature;
  settings.summarizer_model = agent.model;
  settings.summarizer_temperature = agent.summarizer_temperature;
  settings.retry_budget = agent.retry_budget;
  settings.char_budget = agent.char_budget;
  return settings;
}

LearningSettings RunConfig::learning_settings() const {
  LearningSettings settings;
  settings.improve_strategy = !has(Ablation::IS);
  settings.learn_from_others = !has(Ablation::AO);
  settings.model = agent.model;
  settings.temperature = agent.temperature;
  settings.retry_budget = agent.retry_budget;
  return settings;
}

ExtractorSettings RunConfig::extractor_settings() const {
  ExtractorSettings settings;
  settings.model = agent.model;
  settings.temperature = agent.extractor_temperature;
  settings.retry_budget = agent.retry_budget;
  return settings;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json ablations = nlohmann::json::array();
  for (Ablation a : series.ablations) ablations.push_back(ablation_name(a));
  return {
      {"game", config_to_json(game)},
      {"series",
       {{"num_games", series.num_games},
        {"side_under_test", side_name(series.side_under_test)},
        {"learning", series.learning_enabled},
        {"ablations", ablations},
        {"opponents", opponent_kind_name(series.opponents)},
        {"seed", series.seed},
        {"checkpoint_interval", series.checkpoint_interval},
        {"workers", series.workers},
        {"judge", series.judge == JudgeChoice::Rule ? "rule" : "backend"}}},
      {"backend",
       {{"kind", backend_choice_name(backend.kind)},
        {"script", path_json(backend.script)},
        {"endpoint", backend.endpoint},
        {"api_key_env", backend.api_key_env},
        {"max_attempts", backend.max_attempts},
        {"max_in_flight", backend.max_in_flight},
        {"timeout_seconds", backend.timeout_seconds},
        {"replay_dir", path_json(backend.replay_dir)},
        {"record", backend.record}}},
      {"agent",
       {{"model", agent.model},
        {"temperature", agent.temperature},
        {"summarizer_temperature", agent.summarizer_temperature},
        {"extractor_temperature", agent.extractor_temperature},
        {"judge_temperature", agent.judge_temperature},
        {"retry_budget", agent.retry_budget},
        {"char_budget", agent.char_budget},
        {"suggestion_count", agent.suggestion_count}}},
      {"data",
       {{"prompts", path_json(data.prompts)},
        {"role_profiles", path_json(data.role_profiles)},
        {"demonstrations", path_json(data.demonstrations)},
        {"strategy_store", path_json(data.strategy_store)}}},
  };
}

RunConfig RunConfig::from_json(const nlohmann::json& json) {
  RunConfig config;
  check_keys(json, "config", {"game", "series", "backend", "agent", "data", "$schema", "_comment"});
  try {
    if (json.contains("game")) {
      const auto& g = json.at("game");
      check_keys(g, "game",
                 {"quest_team_sizes", "max_proposals_per_round", "points_to_win", "seed"});
      config.game = config_from_json(g);
    }
    if (json.contains("series")) {
      const auto& s = json.at("series");
      check_keys(s, "series",
                 {"num_games", "side_under_test", "learning", "ablations", "opponents", "seed",
                  "checkpoint_interval", "workers", "judge"});
      read(s, "num_games", config.series.num_games);
      if (s.contains("side_under_test")) {
        const auto side = parse_side(s.at("side_under_test").get<std::string>());
        if (!side) throw ConfigError("series.side_under_test must be good or evil");
        config.series.side_under_test = *side;
      }
      read(s, "learning", config.series.learning_enabled);
      if (s.contains("ablations")) {
        for (const auto& a : s.at("ablations")) {
          const auto ablation = parse_ablation(a.get<std::string>());
          if (!ablation) throw ConfigError("unknown ablation " + a.dump());
          config.series.ablations.insert(*ablation);
        }
      }
      if (s.contains("opponents")) {
        const auto kind = parse_opponent_kind(s.at("opponents").get<std::string>());
        if (!kind) throw ConfigError("series.opponents must be rule_bot or pipeline");
        config.series.opponents = *kind;
      }
      read(s, "seed", config.series.seed);
      read(s, "checkpoint_interval", config.series.checkpoint_interval);
      read(s, "workers", config.series.workers);
      if (s.contains("judge")) {
        const std::string judge = s.at("judge").get<std::string>();
        if (judge != "rule" && judge != "backend") {
          throw ConfigError("series.judge must be rule or backend");
        }
        config.series.judge = judge == "rule" ? JudgeChoice::Rule : JudgeChoice::Backend;
      }
    }
    if (json.contains("backend")) {
      const auto& b = json.at("backend");
      check_keys(b, "backend",
                 {"kind", "script", "endpoint", "api_key_env", "max_attempts", "max_in_flight",
                  "timeout_seconds", "replay_dir", "record"});
      if (b.contains("kind")) {
        const auto kind = parse_backend_choice(b.at("kind").get<std::string>());
        if (!kind) throw ConfigError("backend.kind must be scripted, http or replay");
        config.backend.kind = *kind;
      }
      read_path(b, "script", config.backend.script);
      read(b, "endpoint", config.backend.endpoint);
      read(b, "api_key_env", config.backend.api_key_env);
      read(b, "max_attempts", config.backend.max_attempts);
      read(b, "max_in_flight", config.backend.max_in_flight);
      read(b, "timeout_seconds", config.backend.timeout_seconds);
      read_path(b, "replay_dir", config.backend.replay_dir);
      read(b, "record", config.backend.record);
    }
    if (json.contains("agent")) {
      const auto& a = json.at("agent");
      check_keys(a, "agent",
                 {"model", "temperature", "summarizer_temperature", "extractor_temperature",
                  "judge_temperature", "retry_budget", "char_budget", "suggestion_count"});
      read(a, "model", config.agent.model);
      read(a, "temperature", config.agent.temperature);
      read(a, "summarizer_temperature", config.agent.summarizer_temperature);
      read(a, "extractor_temperature", config.agent.extractor_temperature);
      read(a, "judge_temperature", config.agent.judge_temperature);
      read(a, "retry_budget", config.agent.retry_budget);
      read(a, "char_budget", config.agent.char_budget);
      read(a, "suggestion_count", config.agent.suggestion_count);
    }
    if (json.contains("data")) {
      const auto& d = json.at("data");
      check_keys(d, "data", {"prompts", "role_profiles", "demonstrations", "strategy_store"});
      read_path(d, "prompts", config.data.prompts);
      read_path(d, "role_profiles", config.data.role_profiles);
      read_path(d, "demonstrations", config.data.demonstrations);
      read_path(d, "strategy_store", config.data.strategy_store);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  config.validate();
  return config;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return from_json(json);
}

std::string RunConfig::digest() const { return sha256_hex(to_json().dump()); }

}  // namespace avalon
