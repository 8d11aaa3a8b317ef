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

#include "avalon/orchestrator/series.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include "avalon/backend/exchange_log.hpp"
#include "avalon/backend/http.hpp"
#include "avalon/error.hpp"
#include "avalon/orchestrator/canned.hpp"

namespace avalon {
namespace {

/// Owns an inner backend and records its exchanges.
class RecordedBackend final : public Backend {
 public:
  RecordedBackend(std::unique_ptr<Backend> inner, const std::filesystem::path& path,
                  ExchangeRecorder::Clock clock)
      : inner_(std::move(inner)), recorder_(path, std::move(clock)), recording_(*inner_, recorder_) {}

  std::string complete(const CompletionRequest& request) override {
    return recording_.complete(request);
  }
  BackendKind kind() const override { return inner_->kind(); }

 private:
  std::unique_ptr<Backend> inner_;
  ExchangeRecorder recorder_;
  RecordingBackend recording_;
};

/// Hands out one thread-safe backend to several games.
class SharedBackend final : public Backend {
 public:
  explicit SharedBackend(std::shared_ptr<Backend> inner) : inner_(std::move(inner)) {}
  std::string complete(const CompletionRequest& request) override {
    return inner_->complete(request);
  }
  BackendKind kind() const override { return inner_->kind(); }

 private:
  std::shared_ptr<Backend> inner_;
};

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::map<Role, std::string> experience_instructions(const PromptLibrary& prompts,
                                                    const StrategyStore& store) {
  std::map<Role, std::string> out;
  for (const auto& [role, experience] : store.roles()) {
    out[role] = inject_experience(prompts, prompts.get("game_rules"), experience.suggestions,
                                  experience.others);
  }
  return out;
}

std::vector<Seat> seats_where(const std::array<bool, kPlayerCount>& flags,
                              const RoleAssignment& assignment, Side side) {
  std::vector<Seat> out;
  for (Seat s : kAllSeats) {
    if (flags[s.slot()] && assignment.side_of(s) == side) out.push_back(s);
  }
  return out;
}

}  // namespace

DataBundle load_data(const DataConfig& data) {
  DataBundle bundle{data.prompts ? PromptLibrary::load(*data.prompts) : PromptLibrary::defaults(),
                    data.role_profiles ? load_profiles(*data.role_profiles) : default_profiles(),
                    data.demonstrations ? read_json_file(*data.demonstrations)
                                        : default_demonstrations()};
  return bundle;
}

std::string game_name(int index) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "game_%03d", index + 1);
  return buffer;
}

std::uint64_t game_seed(std::uint64_t series_seed, int index) {
  return derive_seed(series_seed, "game-" + std::to_string(index));
}

BackendFactory default_backend_factory(const RunConfig& config) {
  switch (config.backend.kind) {
    case BackendChoice::Scripted: {
      const nlohmann::json script =
          config.backend.script ? read_json_file(*config.backend.script) : nlohmann::json(nullptr);
      return [script](int) -> std::unique_ptr<Backend> { return make_canned_backend(script); };
    }
    case BackendChoice::Http: {
      HttpSettings settings;
      settings.endpoint = config.backend.endpoint;
      settings.api_key_env = config.backend.api_key_env;
      settings.max_attempts = config.backend.max_attempts;
      settings.max_in_flight = config.backend.max_in_flight;
      settings.timeout = std::chrono::seconds(config.backend.timeout_seconds);
      auto shared = std::make_shared<HttpBackend>(settings);
      return [shared](int) -> std::unique_ptr<Backend> {
        return std::make_unique<SharedBackend>(shared);
      };
    }
    case BackendChoice::Replay: {
      const std::filesystem::path dir = *config.backend.replay_dir;
      return [dir](int index) -> std::unique_ptr<Backend> {
        return std::make_unique<ReplayBackend>(
            read_exchange_log(dir / (game_name(index) + ".jsonl")));
      };
    }
  }
  throw ConfigError("unknown backend kind");
}

std::array<bool, kPlayerCount> pipeline_seats(const RunConfig& config,
                                              const RoleAssignment& assignment) {
  std::array<bool, kPlayerCount> flags{};
  for (Seat s : kAllSeats) {
    flags[s.slot()] = config.series.opponents == OpponentKind::Pipeline ||
                      assignment.side_of(s) == config.series.side_under_test;
  }
  return flags;
}

GameLog play_configured_game(const RunConfig& config, const GameSetup& setup_in,
                             Backend& backend, const DataBundle& data,
                             const StrategyStore& store) {
  GameSetup setup = setup_in;
  const PipelineSettings settings = config.pipeline_settings();
  const ExtractorSettings extractor_settings = config.extractor_settings();
  setup.strategy_version = store.version();
  setup.extra["pipeline_settings"] = pipeline_settings_to_json(settings);
  setup.extra["extractor_settings"] = extractor_settings_to_json(extractor_settings);
  setup.extra["side_under_test"] = side_name(config.series.side_under_test);
  auto ablations = nlohmann::json::array();
  for (Ablation a : config.series.ablations) ablations.push_back(ablation_name(a));
  setup.extra["ablations"] = ablations;

  ActionExtractor extractor(&backend, data.prompts, data.demonstrations, extractor_settings);
  PipelineKit kit{&backend, &data.prompts, &extractor, settings};
  Controllers controllers =
      make_controllers(setup, pipeline_seats(config, setup.assignment),
                       store.apply(data.profiles), experience_instructions(data.prompts, store),
                       kit);
  return run_game(setup, controllers, data.prompts);
}

SeriesResult run_series(const RunConfig& config, const BackendFactory& factory,
                        const std::optional<std::filesystem::path>& out_dir) {
  config.validate();
  const DataBundle data = load_data(config.data);
  StrategyStore store = config.data.strategy_store ? StrategyStore::load(*config.data.strategy_store)
                                                   : StrategyStore::from_profiles(data.profiles);
  const int n = config.series.num_games;
  const bool learning = config.series.learning_enabled;
  if (out_dir) {
    std::filesystem::create_directories(*out_dir / "games");
    std::filesystem::create_directories(*out_dir / "exchanges");
    if (learning) store.save(*out_dir / ("strategy_store_v" + std::to_string(store.version()) + ".json"));
  }
  ExchangeRecorder::Clock clock;
  if (config.backend.kind != BackendChoice::Http) clock = [] { return std::string("scripted"); };

  auto backend_for = [&](int index, const char* suffix) -> std::unique_ptr<Backend> {
    std::unique_ptr<Backend> backend = factory(index);
    if (out_dir && config.backend.record && config.backend.kind != BackendChoice::Replay) {
      return std::make_unique<RecordedBackend>(
          std::move(backend), *out_dir / "exchanges" / (game_name(index) + suffix), clock);
    }
    return backend;
  };
  auto setup_for = [&](int index) {
    GameSetup setup = GameSetup::from_seed(game_name(index), game_seed(config.series.seed, index),
                                           config.game);
    setup.extra["series_index"] = index;
    return setup;
  };

  std::vector<GameLog> logs(static_cast<std::size_t>(n));
  auto games = nlohmann::json::array();
  for (int i = 0; i < n; ++i) games.push_back(nlohmann::json::object());

  LearningSettings learning_settings = config.learning_settings();
  if (learning) {
    for (int i = 0; i < n; ++i) {
      auto backend = backend_for(i, ".jsonl");
      const int version_used = store.version();
      logs[i] = play_configured_game(config, setup_for(i), *backend, data, store);
      std::vector<Role> rejected;
      if (logs[i].complete()) {
        auto learning_backend = backend_for(i, ".learning.jsonl");
        ExperienceLearner learner(*learning_backend, data.prompts, learning_settings);
        const auto flags = pipeline_seats(config, logs[i].assignment());
        rejected = learner.learn_from_game(
            store, logs[i],
            seats_where(flags, logs[i].assignment(), config.series.side_under_test),
            data.profiles);
        if (out_dir) {
          store.save(*out_dir / ("strategy_store_v" + std::to_string(store.version()) + ".json"));
        }
      }
      auto rejected_json = nlohmann::json::array();
      for (Role r : rejected) rejected_json.push_back(role_key(r));
      games[i]["strategy_version_used"] = version_used;
      games[i]["strategy_version_after"] = store.version();
      games[i]["suggestions_rejected"] = rejected_json;
    }
  } else {
    const int workers = std::max(1, std::min(config.series.workers, n));
    std::atomic<int> next{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;
    auto work = [&] {
      for (int i = next++; i < n; i = next++) {
        try {
          auto backend = backend_for(i, ".jsonl");
          logs[i] = play_configured_game(config, setup_for(i), *backend, data, store);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    std::vector<std::thread> threads;
    for (int w = 1; w < workers; ++w) threads.emplace_back(work);
    work();
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
    for (int i = 0; i < n; ++i) {
      games[i]["strategy_version_used"] = store.version();
      games[i]["strategy_version_after"] = store.version();
      games[i]["suggestions_rejected"] = nlohmann::json::array();
    }
  }

  int aborted = 0;
  auto checkpoints = nlohmann::json::array();
  for (int i = 0; i < n; ++i) {
    const GameLog& log = logs[i];
    games[i]["index"] = i;
    games[i]["game_id"] = log.game_id();
    games[i]["seed"] = log.seed();
    games[i]["status"] = log.complete() ? "complete" : "aborted";
    games[i]["winner"] = log.winner() ? nlohmann::json(side_name(*log.winner())) : nlohmann::json(nullptr);
    games[i]["log"] = "games/" + game_name(i) + ".jsonl";
    if (!log.complete()) ++aborted;
    if (out_dir) log.write(*out_dir / "games" / (game_name(i) + ".jsonl"));
    if ((i + 1) % config.series.checkpoint_interval == 0 || i + 1 == n) {
      const std::span<const GameLog> prefix(logs.data(), static_cast<std::size_t>(i + 1));
      std::optional<double> rate;
      try {
        rate = winning_rate(prefix, config.series.side_under_test);
      } catch (const UndefinedMetric&) {
      }
      const auto finished = finished_games(prefix).size();
      checkpoints.push_back({{"games", i + 1},
                             {"completed", finished},
                             {"winning_rate", rate ? nlohmann::json(*rate) : nlohmann::json(nullptr)}});
    }
  }

  std::unique_ptr<Judge> judge;
  std::unique_ptr<Backend> judge_backend;
  if (config.series.judge == JudgeChoice::Backend) {
    judge_backend = factory(-1);
    judge = std::make_unique<BackendJudge>(*judge_backend, data.prompts, config.agent.model,
                                           config.agent.judge_temperature);
  } else {
    judge = std::make_unique<RuleJudge>();
  }
  MetricsReport metrics = compute_metrics(logs, *judge);

  auto ablations = nlohmann::json::array();
  for (Ablation a : config.series.ablations) ablations.push_back(ablation_name(a));
  nlohmann::json manifest{{"config_digest", config.digest()},
                          {"seed", config.series.seed},
                          {"side_under_test", side_name(config.series.side_under_test)},
                          {"learning", learning},
                          {"ablations", ablations},
                          {"games", games},
                          {"aborted", aborted},
                          {"checkpoint_interval", config.series.checkpoint_interval},
                          {"checkpoints", checkpoints},
                          {"strategy_version", store.version()}};
  if (out_dir) {
    write_text(*out_dir / "series_manifest.json", manifest.dump(2) + "\n");
    write_text(*out_dir / "metrics.json", metrics.to_json().dump(2) + "\n");
    write_text(*out_dir / "metrics.txt", metrics.to_table());
  }
  return SeriesResult{std::move(logs), std::move(metrics), std::move(store), std::move(manifest)};
}

}  // namespace avalon
