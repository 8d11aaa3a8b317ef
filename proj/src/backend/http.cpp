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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "avalon/backend/http.hpp"

#include <cstdlib>
#include <semaphore>
#include <thread>

#include <httplib.h>

#include "avalon/error.hpp"

namespace avalon {
namespace {

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

ParsedUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("endpoint must be an absolute URL: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

class InFlightSlot {
 public:
  explicit InFlightSlot(std::counting_semaphore<>& semaphore) : semaphore_(semaphore) {
    semaphore_.acquire();
  }
  ~InFlightSlot() { semaphore_.release(); }
  InFlightSlot(const InFlightSlot&) = delete;
  InFlightSlot& operator=(const InFlightSlot&) = delete;

 private:
  std::counting_semaphore<>& semaphore_;
};

}  // namespace

nlohmann::json chat_body(const CompletionRequest& request) {
  nlohmann::json messages = nlohmann::json::array();
  for (const ChatMessage& message : request.messages) {
    messages.push_back({{"role", message_role_name(message.role)}, {"content", message.content}});
  }
  return {{"model", request.model}, {"messages", messages}, {"temperature", request.temperature}};
}

struct HttpBackend::Impl {
  explicit Impl(HttpSettings s)
      : settings(std::move(s)), url(split_url(settings.endpoint)),
        in_flight(std::max(1, settings.max_in_flight)) {}

  std::string api_key() const {
    if (settings.api_key) return *settings.api_key;
    const char* value = std::getenv(settings.api_key_env.c_str());
    if (value == nullptr || *value == '\0') {
      throw BackendError(settings.api_key_env + " is not set", /*retryable=*/false);
    }
    return value;
  }

  HttpSettings settings;
  ParsedUrl url;
  std::counting_semaphore<> in_flight;
};

HttpBackend::HttpBackend(HttpSettings settings)
    : impl_(std::make_unique<Impl>(std::move(settings))) {}

HttpBackend::~HttpBackend() = default;

std::string HttpBackend::complete(const CompletionRequest& request) {
  request.validate();
  const std::string body = chat_body(request).dump();
  const httplib::Headers headers = {{"Authorization", "Bearer " + impl_->api_key()}};
  const HttpSettings& settings = impl_->settings;

  auto backoff = settings.initial_backoff;
  std::string last_error;
  for (int attempt = 1; attempt <= settings.max_attempts; ++attempt) {
    {
      InFlightSlot slot(impl_->in_flight);
      httplib::Client client(impl_->url.origin);
      client.set_connection_timeout(settings.timeout);
      client.set_read_timeout(settings.timeout);
      auto result = client.Post(impl_->url.path, headers, body, "application/json");
      if (!result) {
        last_error = "transport error: " + httplib::to_string(result.error());
      } else if (result->status == 429 || result->status >= 500) {
        last_error = "HTTP " + std::to_string(result->status);
      } else if (result->status != 200) {
        throw BackendError("chat completion rejected with HTTP " + std::to_string(result->status) +
                               ": " + result->body,
                           /*retryable=*/false);
      } else {
        try {
          const auto json = nlohmann::json::parse(result->body);
          return json.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
          throw BackendError(std::string("malformed chat completion response: ") + e.what(),
                             /*retryable=*/false);
        }
      }
    }
    if (attempt < settings.max_attempts) {
      std::this_thread::sleep_for(backoff);
      backoff = std::chrono::duration_cast<std::chrono::milliseconds>(backoff *
                                                                      settings.backoff_factor);
    }
  }
  throw TransportError("chat completion to " + settings.endpoint + " failed: " + last_error,
                       settings.max_attempts);
}

}  // namespace avalon
