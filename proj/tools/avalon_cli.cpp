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

// Command-line front end: run, series, analyze, replay, validate.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "avalon/analytics/judge.hpp"
#include "avalon/analytics/metrics.hpp"
#include "avalon/error.hpp"
#include "avalon/log/game_log.hpp"
#include "avalon/orchestrator/config.hpp"
#include "avalon/orchestrator/host.hpp"
#include "avalon/orchestrator/series.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

/// Flags shared by `run` and `series`; unset ones leave the config alone.
struct SeriesFlags {
  std::string config;
  std::optional<int> games;
  std::string side;
  std::string learning;
  std::vector<std::string> ablations;
  std::string opponents;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<int> checkpoint_interval;
  std::string judge;
  std::string backend;
  std::string script;
  std::string replay_dir;
  std::string out;
};

void add_series_flags(CLI::App& command, SeriesFlags& flags, bool many_games) {
  command.add_option("--config", flags.config, "JSON run config")->check(CLI::ExistingFile);
  command.add_option("--seed", flags.seed, "Series seed");
  command.add_option("--side", flags.side, "Side the pipeline agents play")
      ->check(CLI::IsMember({"good", "evil"}));
  command.add_option("--ablate", flags.ablations,
                     "Drop a module: IS, AO, AM, Plan, Action, AnalysisTeammatesOnly, "
                     "AnalysisAdversariesOnly");
  command.add_option("--opponents", flags.opponents, "Opponent seats")
      ->check(CLI::IsMember({"rule_bot", "pipeline"}));
  command.add_option("--backend", flags.backend, "Completion backend")
      ->check(CLI::IsMember({"scripted", "http", "replay"}));
  command.add_option("--script", flags.script, "Scripted backend queue file")
      ->check(CLI::ExistingFile);
  command.add_option("--replay-dir", flags.replay_dir, "Exchange logs for the replay backend")
      ->check(CLI::ExistingDirectory);
  command.add_option("--out", flags.out, "Output directory")->required();
  if (!many_games) return;
  command.add_option("--games", flags.games, "Number of games")->check(CLI::PositiveNumber);
  command.add_option("--learning", flags.learning, "Experience learning between games")
      ->check(CLI::IsMember({"on", "off"}));
  command.add_option("--workers", flags.workers, "Parallel games without learning")
      ->check(CLI::PositiveNumber);
  command.add_option("--checkpoint-interval", flags.checkpoint_interval,
                     "Games between winning-rate checkpoints")
      ->check(CLI::PositiveNumber);
  command.add_option("--judge", flags.judge, "Utterance judge for the report")
      ->check(CLI::IsMember({"rule", "backend"}));
}

avalon::RunConfig config_from(const SeriesFlags& flags) {
  avalon::RunConfig config =
      flags.config.empty() ? avalon::RunConfig{} : avalon::RunConfig::load(flags.config);
  if (flags.games) config.series.num_games = *flags.games;
  if (!flags.side.empty()) config.series.side_under_test = *avalon::parse_side(flags.side);
  if (!flags.learning.empty()) config.series.learning_enabled = flags.learning == "on";
  for (const auto& name : flags.ablations) {
    const auto ablation = avalon::parse_ablation(name);
    if (!ablation) throw avalon::ConfigError("unknown ablation " + name);
    config.series.ablations.insert(*ablation);
  }
  if (!flags.opponents.empty()) {
    config.series.opponents = *avalon::parse_opponent_kind(flags.opponents);
  }
  if (flags.seed) config.series.seed = *flags.seed;
  if (flags.workers) config.series.workers = *flags.workers;
  if (flags.checkpoint_interval) config.series.checkpoint_interval = *flags.checkpoint_interval;
  if (!flags.judge.empty()) {
    config.series.judge =
        flags.judge == "rule" ? avalon::JudgeChoice::Rule : avalon::JudgeChoice::Backend;
  }
  if (!flags.backend.empty()) config.backend.kind = *avalon::parse_backend_choice(flags.backend);
  if (!flags.script.empty()) config.backend.script = flags.script;
  if (!flags.replay_dir.empty()) config.backend.replay_dir = flags.replay_dir;
  config.validate();
  return config;
}

int cmd_series(const SeriesFlags& flags, bool single) {
  avalon::RunConfig config = config_from(flags);
  if (single) {
    config.series.num_games = 1;
    config.series.learning_enabled = false;
    config.series.ablations.erase(avalon::Ablation::IS);
    config.series.ablations.erase(avalon::Ablation::AO);
  }
  const auto result =
      avalon::run_series(config, avalon::default_backend_factory(config), fs::path(flags.out));
  if (single) {
    const auto& log = result.logs.front();
    nlohmann::json summary = {{"game_id", log.game_id()},
                              {"seed", log.seed()},
                              {"log", (fs::path(flags.out) / "games" /
                                       (avalon::game_name(0) + ".jsonl")).string()},
                              {"complete", log.complete()}};
    const auto winner = log.winner();
    summary["winner"] =
        winner ? nlohmann::json(std::string(avalon::side_name(*winner))) : nlohmann::json(nullptr);
    std::cout << summary.dump(2) << "\n";
    return log.complete() ? kOk : kDomainError;
  }
  std::cout << result.metrics.to_table();
  return kOk;
}

int cmd_analyze(const std::string& logs_dir, const std::string& judge_name,
                const std::string& config_path, bool table) {
  const auto logs = avalon::read_log_dir(logs_dir);
  if (logs.empty()) throw avalon::Error("no *.jsonl game logs in " + logs_dir);
  avalon::RunConfig config =
      config_path.empty() ? avalon::RunConfig{} : avalon::RunConfig::load(config_path);
  std::unique_ptr<avalon::Backend> backend;
  std::unique_ptr<avalon::Judge> judge;
  const auto data = avalon::load_data(config.data);
  if (judge_name == "backend") {
    backend = avalon::default_backend_factory(config)(-1);
    judge = std::make_unique<avalon::BackendJudge>(*backend, data.prompts, config.agent.model,
                                                   config.agent.judge_temperature);
  } else {
    judge = std::make_unique<avalon::RuleJudge>();
  }
  const auto report = avalon::compute_metrics(logs, *judge);
  if (table) {
    std::cout << report.to_table();
  } else {
    std::cout << report.to_json().dump(2) << "\n";
  }
  return kOk;
}

fs::path default_exchange_log(const fs::path& game) {
  return game.parent_path().parent_path() / "exchanges" / game.filename();
}

int cmd_replay(const std::string& game_path, const std::string& exchanges,
               const std::string& config_path, const std::string& out) {
  const auto recorded = avalon::GameLog::read(game_path);
  const fs::path exchange_path =
      exchanges.empty() ? default_exchange_log(game_path) : fs::path(exchanges);
  if (!fs::exists(exchange_path)) {
    throw avalon::ReplayMismatch("missing exchange log " + exchange_path.string(), 0);
  }
  avalon::RunConfig config =
      config_path.empty() ? avalon::RunConfig{} : avalon::RunConfig::load(config_path);
  const auto data = avalon::load_data(config.data);
  const auto replayed = avalon::replay_game(recorded, exchange_path, data.prompts);
  const std::string text = replayed.to_jsonl();
  if (!out.empty()) {
    std::ofstream file(out, std::ios::binary);
    if (!file) throw avalon::Error("cannot write " + out);
    file << text;
  }
  if (text != recorded.to_jsonl()) {
    std::cerr << "replay diverged from " << game_path << "\n";
    return kDomainError;
  }
  std::cout << "replay identical: " << replayed.events().size() << " events\n";
  return kOk;
}

int cmd_validate(const std::string& config_path) {
  const auto config = avalon::RunConfig::load(config_path);
  config.validate();
  std::cout << "ok " << config.digest() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Six-player Avalon with LLM agents"};
  app.require_subcommand(1);

  SeriesFlags run_flags;
  auto* run = app.add_subcommand("run", "Play one game");
  add_series_flags(*run, run_flags, false);

  SeriesFlags series_flags;
  auto* series = app.add_subcommand("series", "Play a series and report metrics");
  add_series_flags(*series, series_flags, true);

  std::string logs_dir;
  std::string judge_name = "rule";
  std::string analyze_config;
  bool table = false;
  auto* analyze = app.add_subcommand("analyze", "Compute metrics over game logs");
  analyze->add_option("--logs", logs_dir, "Directory of game logs")
      ->required()
      ->check(CLI::ExistingDirectory);
  analyze->add_option("--judge", judge_name, "Utterance judge")
      ->check(CLI::IsMember({"rule", "backend"}));
  analyze->add_option("--config", analyze_config, "Run config for the backend judge")
      ->check(CLI::ExistingFile);
  analyze->add_flag("--table", table, "Plain-text table instead of JSON");

  std::string game_path;
  std::string exchanges;
  std::string replay_config;
  std::string replay_out;
  auto* replay = app.add_subcommand("replay", "Re-drive a recorded game");
  replay->add_option("--game", game_path, "Game log")->required()->check(CLI::ExistingFile);
  replay->add_option("--exchanges", exchanges, "Exchange log (default: ../exchanges/<name> beside the game log)");
  replay->add_option("--config", replay_config, "Run config naming the prompt data")
      ->check(CLI::ExistingFile);
  replay->add_option("--out", replay_out, "Write the replayed log here");

  std::string validate_config;
  auto* validate = app.add_subcommand("validate", "Check a run config");
  validate->add_option("config", validate_config, "Run config")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsageError;
  }

  try {
    if (*run) return cmd_series(run_flags, true);
    if (*series) return cmd_series(series_flags, false);
    if (*analyze) return cmd_analyze(logs_dir, judge_name, analyze_config, table);
    if (*replay) return cmd_replay(game_path, exchanges, replay_config, replay_out);
    if (*validate) return cmd_validate(validate_config);
  } catch (const avalon::ReplayMismatch& e) {
    std::cerr << "replay mismatch at exchange " << e.turn() << ": " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kUsageError;
}
