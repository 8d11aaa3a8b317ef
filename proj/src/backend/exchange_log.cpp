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

#include "avalon/backend/exchange_log.hpp"

#include <ctime>

#include "avalon/error.hpp"

namespace avalon {

nlohmann::json exchange_to_json(const Exchange& exchange) {
  return {{"digest", exchange.digest},
          {"purpose", purpose_name(exchange.request.purpose)},
          {"request", request_to_json(exchange.request)},
          {"response", exchange.response},
          {"timestamp", exchange.timestamp}};
}

Exchange exchange_from_json(const nlohmann::json& json) {
  return {json.at("digest").get<std::string>(), request_from_json(json.at("request")),
          json.at("response").get<std::string>(), json.value("timestamp", std::string())};
}

std::vector<Exchange> read_exchange_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ReplayMismatch("exchange log " + path.string() + " is missing or unreadable", 0);
  }
  std::vector<Exchange> exchanges;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      exchanges.push_back(exchange_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ReplayMismatch("exchange log line " + std::to_string(exchanges.size() + 1) +
                               " is malformed: " + e.what(),
                           exchanges.size());
    }
  }
  return exchanges;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

ExchangeRecorder::ExchangeRecorder(const std::filesystem::path& path, Clock clock)
    : path_(path), out_(path, std::ios::trunc), clock_(std::move(clock)) {
  if (!out_) throw Error("cannot open exchange log " + path.string() + " for writing");
  if (!clock_) clock_ = utc_timestamp;
}

void ExchangeRecorder::record_exchange(const CompletionRequest& request,
                                       const std::string& response) {
  const Exchange exchange{request_digest(request), request, response, clock_()};
  out_ << exchange_to_json(exchange).dump() << '\n';
  out_.flush();
  if (!out_) throw Error("write to exchange log " + path_.string() + " failed");
  ++count_;
}

std::string RecordingBackend::complete(const CompletionRequest& request) {
  std::string response = inner_.complete(request);
  recorder_.record_exchange(request, response);
  return response;
}

std::string ReplayBackend::complete(const CompletionRequest& request) {
  const std::size_t turn = next_;
  const std::string where = "turn " + std::to_string(turn) + " (" +
                            std::string(stage_name(request.tag.stage)) + ", round " +
                            std::to_string(request.tag.round) +
                            (request.tag.seat ? ", " + player_name(*request.tag.seat) : "") + ")";
  if (turn >= exchanges_.size()) {
    throw ReplayMismatch("replay diverged at " + where + ": the recording has only " +
                             std::to_string(exchanges_.size()) + " exchanges",
                         turn);
  }
  const std::string digest = request_digest(request);
  if (digest != exchanges_[turn].digest) {
    throw ReplayMismatch("replay diverged at " + where + ": request digest " + digest +
                             " does not match recorded " + exchanges_[turn].digest,
                         turn);
  }
  ++next_;
  return exchanges_[turn].response;
}

}  // namespace avalon
