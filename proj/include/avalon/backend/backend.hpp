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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "avalon/game/types.hpp"

namespace avalon {

enum class MessageRole { System, User, Assistant };

struct ChatMessage {
  MessageRole role;
  std::string content;
};

/// Who is asking; sets the default temperature.
enum class Purpose { Agent, Extractor, Judge, Summarizer };

/// Which module issued a call. Finer than Purpose so call traces can be
/// audited per pipeline stage.
enum class Stage {
  Analysis,
  Planning,
  Action,
  Response,
  Summarize,
  EmergencySummarize,
  Extract,
  Judge,
  Suggest,
  ImproveStrategy,
  OtherStrategies,
};

struct CallTag {
  Stage stage = Stage::Action;
  std::optional<Seat> seat;
  int round = 0;
  /// Index of the agent turn within the game; -1 outside agent turns.
  int turn = -1;
};

struct CompletionRequest {
  std::vector<ChatMessage> messages;
  double temperature = 0.3;
  std::string model;
  Purpose purpose = Purpose::Agent;
  CallTag tag;

  /// Throws ConfigError on empty system/user content or a temperature
  /// outside [0, 2].
  void validate() const;
};

/// 0.3 for Agent, 0.0 for everything else.
double default_temperature(Purpose purpose);

std::string_view purpose_name(Purpose purpose);
std::string_view stage_name(Stage stage);
std::string_view message_role_name(MessageRole role);
std::optional<Purpose> parse_purpose(std::string_view text);
std::optional<Stage> parse_stage(std::string_view text);
std::optional<MessageRole> parse_message_role(std::string_view text);

nlohmann::json request_to_json(const CompletionRequest& request);
CompletionRequest request_from_json(const nlohmann::json& json);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

/// Hex SHA-256 of the canonical JSON form of a request.
std::string request_digest(const CompletionRequest& request);

enum class BackendKind { LiveHttp, Scripted, Replay };

/// Text-completion service.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string complete(const CompletionRequest& request) = 0;
  virtual BackendKind kind() const = 0;
};

/// Convenience for a system + user exchange.
CompletionRequest make_request(std::string system, std::string user, Purpose purpose,
                               CallTag tag, std::string model, double temperature);

}  // namespace avalon
