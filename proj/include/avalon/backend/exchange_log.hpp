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
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "avalon/backend/backend.hpp"

namespace avalon {

/// One request/response pair of the exchange log.
struct Exchange {
  std::string digest;
  CompletionRequest request;
  std::string response;
  std::string timestamp;
};

nlohmann::json exchange_to_json(const Exchange& exchange);
Exchange exchange_from_json(const nlohmann::json& json);

/// Reads a JSONL exchange log. A missing or unreadable file is a replay
/// mismatch at turn 0.
std::vector<Exchange> read_exchange_log(const std::filesystem::path& path);

/// Appends exchanges to a JSONL file, one object per line:
/// {digest, purpose, request, response, timestamp}.
class ExchangeRecorder {
 public:
  using Clock = std::function<std::string()>;

  /// Truncates `path`. Throws Error if it cannot be opened.
  explicit ExchangeRecorder(const std::filesystem::path& path, Clock clock = {});

  /// Throws Error if the write fails.
  void record_exchange(const CompletionRequest& request, const std::string& response);

  std::size_t size() const { return count_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  Clock clock_;
  std::size_t count_ = 0;
};

/// Forwards to an inner backend and records every successful exchange.
class RecordingBackend : public Backend {
 public:
  RecordingBackend(Backend& inner, ExchangeRecorder& recorder)
      : inner_(inner), recorder_(recorder) {}

  std::string complete(const CompletionRequest& request) override;
  BackendKind kind() const override { return inner_.kind(); }

 private:
  Backend& inner_;
  ExchangeRecorder& recorder_;
};

/// Serves recorded responses in order. The n-th call must carry the digest
/// of the n-th recorded exchange; otherwise ReplayMismatch names turn n.
class ReplayBackend : public Backend {
 public:
  explicit ReplayBackend(std::vector<Exchange> exchanges) : exchanges_(std::move(exchanges)) {}

  std::string complete(const CompletionRequest& request) override;
  BackendKind kind() const override { return BackendKind::Replay; }

  std::size_t served() const { return next_; }
  std::size_t remaining() const { return exchanges_.size() - next_; }

 private:
  std::vector<Exchange> exchanges_;
  std::size_t next_ = 0;
};

/// ISO-8601 UTC wall-clock time.
std::string utc_timestamp();

}  // namespace avalon
