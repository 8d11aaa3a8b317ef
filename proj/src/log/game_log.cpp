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

#include "avalon/log/game_log.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "avalon/error.hpp"

namespace avalon {
namespace {

constexpr EventKind kAllKinds[] = {
    EventKind::GameStart,     EventKind::HostInstruction, EventKind::PublicResponse,
    EventKind::PrivateResponse, EventKind::PrivateAction, EventKind::TeamProposal,
    EventKind::TeamVoteBallot, EventKind::QuestCardPlay,  EventKind::QuestOutcome,
    EventKind::AssassinGuess, EventKind::Winner,          EventKind::MemorySnapshot,
    EventKind::GameAborted,
};

std::vector<Seat> seats_from_json(const nlohmann::json& json) {
  std::vector<Seat> seats;
  for (const auto& s : json) seats.push_back(Seat(s.get<int>()));
  return seats;
}

const GameEvent& start_event(const std::vector<GameEvent>& events) {
  if (events.empty() || events.front().kind != EventKind::GameStart) {
    throw Error("game log does not begin with a game_start event");
  }
  return events.front();
}

[[noreturn]] void log_mismatch(const GameEvent& event, const std::string& what) {
  throw Error("log event " + std::to_string(event.seq) + " (" +
              std::string(event_kind_name(event.kind)) + "): " + what);
}

}  // namespace

std::string_view event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::GameStart: return "game_start";
    case EventKind::HostInstruction: return "host_instruction";
    case EventKind::PublicResponse: return "public_response";
    case EventKind::PrivateResponse: return "private_response";
    case EventKind::PrivateAction: return "private_action";
    case EventKind::TeamProposal: return "team_proposal";
    case EventKind::TeamVoteBallot: return "team_vote";
    case EventKind::QuestCardPlay: return "quest_card";
    case EventKind::QuestOutcome: return "quest_outcome";
    case EventKind::AssassinGuess: return "assassin_guess";
    case EventKind::Winner: return "winner";
    case EventKind::MemorySnapshot: return "memory_snapshot";
    case EventKind::GameAborted: return "game_aborted";
  }
  return "?";
}

std::optional<EventKind> parse_event_kind(std::string_view text) {
  for (EventKind kind : kAllKinds) {
    if (text == event_kind_name(kind)) return kind;
  }
  return std::nullopt;
}

nlohmann::json event_to_json(const GameEvent& event) {
  nlohmann::json json{{"seq", event.seq},
                      {"kind", event_kind_name(event.kind)},
                      {"round", event.round},
                      {"data", event.data}};
  json["owner"] = event.owner ? nlohmann::json(event.owner->index()) : nlohmann::json(nullptr);
  return json;
}

GameEvent event_from_json(const nlohmann::json& json) {
  GameEvent event;
  event.seq = json.at("seq").get<std::uint64_t>();
  const auto kind = parse_event_kind(json.at("kind").get<std::string>());
  if (!kind) throw Error("unknown event kind " + json.at("kind").dump());
  event.kind = *kind;
  event.round = json.at("round").get<int>();
  if (json.contains("owner") && !json.at("owner").is_null()) {
    event.owner = Seat(json.at("owner").get<int>());
  }
  event.data = json.value("data", nlohmann::json::object());
  return event;
}

nlohmann::json config_to_json(const GameConfig& config) {
  return {{"quest_team_sizes", config.quest_team_sizes},
          {"max_proposals_per_round", config.max_proposals_per_round},
          {"points_to_win", config.points_to_win},
          {"seed", config.seed}};
}

GameConfig config_from_json(const nlohmann::json& json) {
  GameConfig config;
  if (json.contains("quest_team_sizes")) {
    config.quest_team_sizes = json.at("quest_team_sizes").get<std::array<int, kRounds>>();
  }
  config.max_proposals_per_round =
      json.value("max_proposals_per_round", config.max_proposals_per_round);
  config.points_to_win = json.value("points_to_win", config.points_to_win);
  config.seed = json.value("seed", config.seed);
  config.validate();
  return config;
}

nlohmann::json assignment_to_json(const RoleAssignment& assignment) {
  auto roles = nlohmann::json::array();
  for (Role role : assignment.roles()) roles.push_back(role_key(role));
  return roles;
}

RoleAssignment assignment_from_json(const nlohmann::json& json) {
  if (!json.is_array() || json.size() != kPlayerCount) {
    throw Error("role assignment must list six roles");
  }
  std::array<Role, kPlayerCount> roles{};
  for (std::size_t i = 0; i < kPlayerCount; ++i) {
    const auto role = parse_role(json[i].get<std::string>());
    if (!role) throw Error("unknown role " + json[i].dump());
    roles[i] = *role;
  }
  return RoleAssignment(roles);
}

GameLog::GameLog(std::vector<GameEvent> events) : events_(std::move(events)) {
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (events_[i].seq != i) throw Error("game log sequence numbers are not dense from 0");
  }
}

const GameEvent& GameLog::append(EventKind kind, int round, std::optional<Seat> owner,
                                 nlohmann::json data) {
  events_.push_back(GameEvent{events_.size(), kind, round, owner, std::move(data)});
  return events_.back();
}

std::vector<const GameEvent*> GameLog::of_kind(EventKind kind) const {
  std::vector<const GameEvent*> out;
  for (const GameEvent& event : events_) {
    if (event.kind == kind) out.push_back(&event);
  }
  return out;
}

std::string GameLog::game_id() const {
  return start_event(events_).data.at("game_id").get<std::string>();
}

std::uint64_t GameLog::seed() const {
  return start_event(events_).data.at("seed").get<std::uint64_t>();
}

GameConfig GameLog::config() const { return config_from_json(start_event(events_).data.at("config")); }

RoleAssignment GameLog::assignment() const {
  return assignment_from_json(start_event(events_).data.at("roles"));
}

int GameLog::strategy_version() const {
  return start_event(events_).data.value("strategy_version", 0);
}

bool GameLog::complete() const {
  return !events_.empty() && events_.back().kind == EventKind::Winner;
}

bool GameLog::aborted() const {
  return std::any_of(events_.begin(), events_.end(),
                     [](const GameEvent& e) { return e.kind == EventKind::GameAborted; });
}

std::optional<Side> GameLog::winner() const {
  if (!complete()) return std::nullopt;
  return parse_side(events_.back().data.at("side").get<std::string>());
}

std::string GameLog::to_jsonl() const {
  std::string out;
  for (const GameEvent& event : events_) {
    out += event_to_json(event).dump();
    out += '\n';
  }
  return out;
}

GameLog GameLog::from_jsonl(std::string_view text) {
  std::vector<GameEvent> events;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    events.push_back(event_from_json(nlohmann::json::parse(line)));
  }
  return GameLog(std::move(events));
}

void GameLog::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write game log " + path.string());
  out << to_jsonl();
  if (!out) throw Error("failed writing game log " + path.string());
}

GameLog GameLog::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read game log " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return from_jsonl(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::vector<GameLog> read_log_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<GameLog> logs;
  logs.reserve(files.size());
  for (const auto& file : files) logs.push_back(GameLog::read(file));
  return logs;
}

GameLog public_projection(const GameLog& log, std::optional<Seat> viewer) {
  std::vector<GameEvent> kept;
  for (const GameEvent& event : log.events()) {
    if (event.kind == EventKind::GameStart) {
      GameEvent start = event;
      start.data.erase("roles");
      start.seq = kept.size();
      kept.push_back(std::move(start));
      continue;
    }
    const bool visible = !event.owner || (viewer && *event.owner == *viewer);
    if (!visible) continue;
    GameEvent copy = event;
    copy.seq = kept.size();
    kept.push_back(std::move(copy));
  }
  return GameLog(std::move(kept));
}

GameState validate_log(const GameLog& log) {
  const auto& events = log.events();
  GameState state = GameState::initial(log.config(), log.assignment());
  std::vector<CardPlay> pending_cards;
  for (const GameEvent& event : events) {
    const bool announcement =
        event.kind == EventKind::HostInstruction && event.data.value("expected", nlohmann::json()).is_null();
    if (state.phase == Phase::Finished && event.kind != EventKind::Winner &&
        event.kind != EventKind::MemorySnapshot && !announcement) {
      log_mismatch(event, "event after the game finished");
    }
    switch (event.kind) {
      case EventKind::TeamProposal: {
        if (state.phase == Phase::Reveal) state = advance(state, RevealComplete{});
        if (event.round != state.round) log_mismatch(event, "round does not match the engine");
        state = advance(state, ProposeTeam{Seat(event.data.at("leader").get<int>()),
                                           seats_from_json(event.data.at("team"))});
        break;
      }
      case EventKind::TeamVoteBallot: {
        std::vector<Ballot> ballots;
        for (const auto& b : event.data.at("ballots")) {
          const auto vote = parse_vote(b.at("vote").get<std::string>());
          if (!vote) log_mismatch(event, "unknown vote");
          ballots.push_back({Seat(b.at("voter").get<int>()), *vote});
        }
        const bool passed = tally_team_vote(ballots) == VoteResult::Pass;
        if (passed != (event.data.at("result").get<std::string>() == "pass")) {
          log_mismatch(event, "recorded vote result disagrees with the tally");
        }
        state = advance(state, TeamVoteCast{std::move(ballots)});
        break;
      }
      case EventKind::QuestCardPlay: {
        const auto card = parse_card(event.data.at("card").get<std::string>());
        if (!card) log_mismatch(event, "unknown card");
        pending_cards.push_back({Seat(event.data.at("player").get<int>()), *card});
        break;
      }
      case EventKind::QuestOutcome: {
        state = advance(state, QuestCardsPlayed{pending_cards});
        pending_cards.clear();
        const auto outcome = parse_outcome(event.data.at("outcome").get<std::string>());
        if (!outcome || state.quest_history.empty() ||
            state.quest_history.back().outcome != *outcome) {
          log_mismatch(event, "recorded quest outcome disagrees with the cards");
        }
        break;
      }
      case EventKind::AssassinGuess: {
        std::optional<Seat> guess;
        if (!event.data.at("guess").is_null()) guess = Seat(event.data.at("guess").get<int>());
        state = advance(state, AssassinMove{guess});
        const auto& recorded = event.data.at("result");
        const auto& actual = state.assassinations.back().result;
        const bool same = recorded.is_null()
                              ? !actual.has_value()
                              : actual && recorded.get<std::string>() ==
                                              assassination_result_name(*actual);
        if (!same) log_mismatch(event, "recorded assassination result disagrees");
        break;
      }
      case EventKind::Winner: {
        const auto side = parse_side(event.data.at("side").get<std::string>());
        if (state.phase != Phase::Finished || state.winner != side) {
          log_mismatch(event, "winner does not match the engine");
        }
        break;
      }
      case EventKind::GameAborted:
        return state;
      default:
        break;
    }
  }
  if (!pending_cards.empty()) throw Error("quest cards without an outcome at the end of the log");
  return state;
}

}  // namespace avalon
