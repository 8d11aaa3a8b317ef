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

#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "avalon/backend/scripted.hpp"

namespace avalon {

/// Deterministic stand-in for a chat model. It reads the stage from the
/// call tag and the host instruction from the prompt, and answers every
/// stage in the shape the pipeline expects: team choices, votes, quest
/// cards, extractor answer lines, judge labels, numbered suggestions.
/// Learning answers deliberately name seats so the seat filter has work.
std::string canned_response(const CompletionRequest& request);

/// Scripted backend whose queues come from `script` (may be null) and whose
/// fallback is canned_response.
std::unique_ptr<ScriptedBackend> make_canned_backend(const nlohmann::json& script = nullptr);

/// The host instruction inside an agent prompt, or nullopt.
std::optional<std::string> instruction_in_prompt(const std::string& prompt);

}  // namespace avalon
