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

#include <chrono>
#include <memory>
#include <optional>
#include <string>

#include "avalon/backend/backend.hpp"

namespace avalon {

struct HttpSettings {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string api_key_env = "AVALON_API_KEY";
  /// Overrides the environment variable when set.
  std::optional<std::string> api_key;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  double backoff_factor = 2.0;
  int max_in_flight = 4;
  std::chrono::seconds timeout{120};
};

/// Live chat-completion client: one POST of {model, messages, temperature}
/// per call, bearer-token auth, exponential backoff on transport failures,
/// HTTP 429 and 5xx. Safe to share between threads; at most max_in_flight
/// requests are outstanding at once.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpSettings settings);
  ~HttpBackend() override;

  std::string complete(const CompletionRequest& request) override;
  BackendKind kind() const override { return BackendKind::LiveHttp; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// The JSON body sent for a request.
nlohmann::json chat_body(const CompletionRequest& request);

}  // namespace avalon
