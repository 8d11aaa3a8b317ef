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

// Python module _avalon. Structured values cross as JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "avalon/agent/profile.hpp"
#include "avalon/analytics/judge.hpp"
#include "avalon/analytics/metrics.hpp"
#include "avalon/error.hpp"
#include "avalon/log/game_log.hpp"
#include "avalon/orchestrator/config.hpp"
#include "avalon/orchestrator/controllers.hpp"
#include "avalon/orchestrator/host.hpp"
#include "avalon/orchestrator/series.hpp"

namespace py = pybind11;

namespace {

std::string play_rule_bot_game(std::uint64_t seed) {
  const auto setup = avalon::GameSetup::from_seed("bots_" + std::to_string(seed), seed);
  auto controllers = avalon::make_controllers(setup, {false, false, false, false, false, false},
                                              avalon::default_profiles(), {},
                                              avalon::PipelineKit{});
  return avalon::run_game(setup, controllers, avalon::PromptLibrary::defaults()).to_jsonl();
}

std::string run_series(const std::string& config_json, const std::optional<std::string>& out_dir) {
  const auto config = avalon::RunConfig::from_json(nlohmann::json::parse(config_json));
  config.validate();
  std::optional<std::filesystem::path> out;
  if (out_dir) out = *out_dir;
  py::gil_scoped_release release;
  return avalon::run_series(config, avalon::default_backend_factory(config), out)
      .metrics.to_json()
      .dump();
}

std::string compute_metrics(const std::vector<std::string>& games) {
  std::vector<avalon::GameLog> logs;
  logs.reserve(games.size());
  for (const auto& text : games) logs.push_back(avalon::GameLog::from_jsonl(text));
  avalon::RuleJudge judge;
  return avalon::compute_metrics(logs, judge).to_json().dump();
}

void validate_log(const std::string& game) {
  avalon::validate_log(avalon::GameLog::from_jsonl(game));
}

bool replay(const std::string& game, const std::string& exchange_log) {
  const auto recorded = avalon::GameLog::from_jsonl(game);
  const auto replayed =
      avalon::replay_game(recorded, exchange_log, avalon::PromptLibrary::defaults());
  return replayed.to_jsonl() == recorded.to_jsonl();
}

std::string config_digest(const std::string& config_json) {
  const auto config = avalon::RunConfig::from_json(nlohmann::json::parse(config_json));
  config.validate();
  return config.digest();
}

}  // namespace

PYBIND11_MODULE(_avalon, m) {
  m.doc() = "Avalon engine, agent pipeline and metrics";

  auto error = py::register_exception<avalon::Error>(m, "AvalonError");
  py::register_exception<avalon::ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<avalon::ReplayMismatch>(m, "ReplayMismatch", error.ptr());

  m.def("play_rule_bot_game", &play_rule_bot_game, py::arg("seed"),
        "Six rule bots; returns the JSONL game log.");
  m.def("run_series", &run_series, py::arg("config_json"), py::arg("out_dir") = py::none(),
        "Runs a configured series; returns the metrics as JSON.");
  m.def("compute_metrics", &compute_metrics, py::arg("games"),
        "Metrics over JSONL game logs with the rule judge.");
  m.def("validate_log", &validate_log, py::arg("game"));
  m.def("replay", &replay, py::arg("game"), py::arg("exchange_log"));
  m.def("config_digest", &config_digest, py::arg("config_json"));
}
