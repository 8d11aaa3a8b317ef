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

#include "avalon/backend/backend.hpp"

#include <array>
#include <cstdio>

#include <openssl/evp.h>

#include "avalon/error.hpp"

namespace avalon {
namespace {

constexpr std::array<Purpose, 4> kPurposes = {Purpose::Agent, Purpose::Extractor, Purpose::Judge,
                                              Purpose::Summarizer};
constexpr std::array<Stage, 11> kStages = {
    Stage::Analysis, Stage::Planning,   Stage::Action,  Stage::Response,
    Stage::Summarize, Stage::EmergencySummarize, Stage::Extract, Stage::Judge,
    Stage::Suggest,  Stage::ImproveStrategy, Stage::OtherStrategies};

}  // namespace

std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(length * 2);
  char buffer[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buffer, sizeof(buffer), "%02x", digest[i]);
    hex += buffer;
  }
  return hex;
}

void CompletionRequest::validate() const {
  if (temperature < 0.0 || temperature > 2.0) {
    throw ConfigError("temperature must lie in [0, 2]");
  }
  for (const ChatMessage& message : messages) {
    if (message.role != MessageRole::Assistant && message.content.empty()) {
      throw ConfigError(std::string(message_role_name(message.role)) +
                        " message content must not be empty");
    }
  }
  if (messages.empty()) throw ConfigError("request carries no messages");
}

double default_temperature(Purpose purpose) { return purpose == Purpose::Agent ? 0.3 : 0.0; }

std::string_view purpose_name(Purpose purpose) {
  switch (purpose) {
    case Purpose::Agent: return "agent";
    case Purpose::Extractor: return "extractor";
    case Purpose::Judge: return "judge";
    case Purpose::Summarizer: return "summarizer";
  }
  return "?";
}

std::string_view stage_name(Stage stage) {
  switch (stage) {
    case Stage::Analysis: return "analysis";
    case Stage::Planning: return "planning";
    case Stage::Action: return "action";
    case Stage::Response: return "response";
    case Stage::Summarize: return "summarize";
    case Stage::EmergencySummarize: return "emergency_summarize";
    case Stage::Extract: return "extract";
    case Stage::Judge: return "judge";
    case Stage::Suggest: return "suggest";
    case Stage::ImproveStrategy: return "improve_strategy";
    case Stage::OtherStrategies: return "other_strategies";
  }
  return "?";
}

std::string_view message_role_name(MessageRole role) {
  switch (role) {
    case MessageRole::System: return "system";
    case MessageRole::User: return "user";
    case MessageRole::Assistant: return "assistant";
  }
  return "?";
}

std::optional<Purpose> parse_purpose(std::string_view text) {
  for (Purpose p : kPurposes) {
    if (purpose_name(p) == text) return p;
  }
  return std::nullopt;
}

std::optional<Stage> parse_stage(std::string_view text) {
  for (Stage s : kStages) {
    if (stage_name(s) == text) return s;
  }
  return std::nullopt;
}

std::optional<MessageRole> parse_message_role(std::string_view text) {
  for (MessageRole r : {MessageRole::System, MessageRole::User, MessageRole::Assistant}) {
    if (message_role_name(r) == text) return r;
  }
  return std::nullopt;
}

nlohmann::json request_to_json(const CompletionRequest& request) {
  nlohmann::json messages = nlohmann::json::array();
  for (const ChatMessage& message : request.messages) {
    messages.push_back({{"role", message_role_name(message.role)}, {"content", message.content}});
  }
  nlohmann::json tag = {{"stage", stage_name(request.tag.stage)},
                        {"round", request.tag.round},
                        {"turn", request.tag.turn}};
  tag["seat"] = request.tag.seat ? nlohmann::json(request.tag.seat->index()) : nlohmann::json();
  return {{"messages", messages},
          {"temperature", request.temperature},
          {"model", request.model},
          {"purpose", purpose_name(request.purpose)},
          {"tag", tag}};
}

CompletionRequest request_from_json(const nlohmann::json& json) {
  CompletionRequest request;
  for (const auto& message : json.at("messages")) {
    const auto role = parse_message_role(message.at("role").get<std::string>());
    if (!role) throw Error("unknown message role in recorded request");
    request.messages.push_back({*role, message.at("content").get<std::string>()});
  }
  request.temperature = json.at("temperature").get<double>();
  request.model = json.at("model").get<std::string>();
  const auto purpose = parse_purpose(json.at("purpose").get<std::string>());
  if (!purpose) throw Error("unknown purpose in recorded request");
  request.purpose = *purpose;
  const auto& tag = json.at("tag");
  const auto stage = parse_stage(tag.at("stage").get<std::string>());
  if (!stage) throw Error("unknown stage in recorded request");
  request.tag.stage = *stage;
  request.tag.round = tag.at("round").get<int>();
  request.tag.turn = tag.at("turn").get<int>();
  if (!tag.at("seat").is_null()) request.tag.seat = Seat(tag.at("seat").get<int>());
  return request;
}

std::string request_digest(const CompletionRequest& request) {
  // nlohmann::json keeps object keys sorted, so dump() is canonical.
  return sha256_hex(request_to_json(request).dump());
}

CompletionRequest make_request(std::string system, std::string user, Purpose purpose,
                               CallTag tag, std::string model, double temperature) {
  CompletionRequest request;
  if (!system.empty()) request.messages.push_back({MessageRole::System, std::move(system)});
  request.messages.push_back({MessageRole::User, std::move(user)});
  request.purpose = purpose;
  request.tag = tag;
  request.model = std::move(model);
  request.temperature = temperature;
  return request;
}

}  // namespace avalon
