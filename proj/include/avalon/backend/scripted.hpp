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
#include <deque>
#include <functional>
#include <map>
#include <string>

#include "avalon/backend/backend.hpp"

namespace avalon {

/// Deterministic backend. Each purpose has its own queue of canned lines,
/// popped in call order; when a queue is empty the optional responder
/// answers instead.
class ScriptedBackend : public Backend {
 public:
  using Responder = std::function<std::string(const CompletionRequest&)>;

  explicit ScriptedBackend(std::map<Purpose, std::deque<std::string>> queues,
                           Responder fallback = {});
  explicit ScriptedBackend(Responder responder);

  /// {"agent": [...], "extractor": [...], "judge": [...], "summarizer": [...]}
  static ScriptedBackend from_json(const nlohmann::json& script, Responder fallback = {});

  std::string complete(const CompletionRequest& request) override;
  BackendKind kind() const override { return BackendKind::Scripted; }

  std::size_t calls(Purpose purpose) const;
  std::size_t total_calls() const { return total_calls_; }

 private:
  std::map<Purpose, std::deque<std::string>> queues_;
  std::map<Purpose, std::size_t> calls_;
  std::size_t total_calls_ = 0;
  Responder fallback_;
};

}  // namespace avalon
