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

#include "avalon/backend/scripted.hpp"

#include "avalon/error.hpp"

namespace avalon {

ScriptedBackend::ScriptedBackend(std::map<Purpose, std::deque<std::string>> queues,
                                 Responder fallback)
    : queues_(std::move(queues)), fallback_(std::move(fallback)) {}

ScriptedBackend::ScriptedBackend(Responder responder) : fallback_(std::move(responder)) {}

ScriptedBackend ScriptedBackend::from_json(const nlohmann::json& script, Responder fallback) {
  std::map<Purpose, std::deque<std::string>> queues;
  for (const auto& [key, lines] : script.items()) {
    const auto purpose = parse_purpose(key);
    if (!purpose) throw ConfigError("unknown purpose in script: " + key);
    for (const auto& line : lines) queues[*purpose].push_back(line.get<std::string>());
  }
  return ScriptedBackend(std::move(queues), std::move(fallback));
}

std::string ScriptedBackend::complete(const CompletionRequest& request) {
  request.validate();
  const std::size_t index = calls_[request.purpose]++;
  ++total_calls_;
  auto& queue = queues_[request.purpose];
  if (!queue.empty()) {
    std::string line = std::move(queue.front());
    queue.pop_front();
    return line;
  }
  if (fallback_) return fallback_(request);
  throw ScriptExhausted("script has no line for " + std::string(purpose_name(request.purpose)) +
                        " call #" + std::to_string(index));
}

std::size_t ScriptedBackend::calls(Purpose purpose) const {
  const auto it = calls_.find(purpose);
  return it == calls_.end() ? 0 : it->second;
}

}  // namespace avalon
