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

#include "avalon/agent/templates.hpp"

#include <algorithm>
#include <fstream>

#include "avalon/embedded_data.hpp"
#include "avalon/error.hpp"

namespace avalon {
namespace {

bool is_name_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }

bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == ' ' || c == '_' || c == '-';
}

/// Length of the placeholder starting at text[pos] == '{', or 0.
std::size_t placeholder_length(std::string_view text, std::size_t pos) {
  if (pos + 1 >= text.size() || !is_name_start(text[pos + 1])) return 0;
  std::size_t end = pos + 1;
  while (end < text.size() && is_name_char(text[end])) ++end;
  if (end >= text.size() || text[end] != '}') return 0;
  return end - pos + 1;
}

}  // namespace

std::vector<std::string> placeholders(std::string_view text) {
  std::vector<std::string> names;
  for (std::size_t pos = text.find('{'); pos != std::string_view::npos;
       pos = text.find('{', pos + 1)) {
    const std::size_t length = placeholder_length(text, pos);
    if (length == 0) continue;
    std::string name(text.substr(pos + 1, length - 2));
    if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
  }
  return names;
}

std::string render_template(std::string_view text, const TemplateValues& values) {
  std::string out;
  out.reserve(text.size());
  std::size_t cursor = 0;
  for (std::size_t pos = text.find('{'); pos != std::string_view::npos;
       pos = text.find('{', pos + 1)) {
    const std::size_t length = placeholder_length(text, pos);
    if (length == 0) continue;
    const std::string_view name = text.substr(pos + 1, length - 2);
    const auto it = values.find(name);
    if (it == values.end()) {
      throw TemplateError("no value for placeholder {" + std::string(name) + "}");
    }
    out.append(text.substr(cursor, pos - cursor));
    out.append(it->second);
    cursor = pos + length;
    pos = cursor - 1;
  }
  out.append(text.substr(cursor));
  return out;
}

const PromptLibrary& PromptLibrary::defaults() {
  static const PromptLibrary library = [] {
    PromptLibrary lib;
    const auto data = nlohmann::json::parse(embedded::kPrompts);
    for (const auto& [key, value] : data.items()) {
      if (key.starts_with('_')) continue;
      lib.templates_[key] = value.get<std::string>();
    }
    return lib;
  }();
  return library;
}

PromptLibrary PromptLibrary::with_overrides(const nlohmann::json& overrides) {
  PromptLibrary lib = defaults();
  for (const auto& [key, value] : overrides.items()) {
    if (key.starts_with('_')) continue;
    if (!value.is_string()) throw ConfigError("prompt template " + key + " must be a string");
    lib.templates_[key] = value.get<std::string>();
  }
  return lib;
}

PromptLibrary PromptLibrary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read prompt file " + path.string());
  try {
    return with_overrides(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("prompt file " + path.string() + " is not valid JSON: " + e.what());
  }
}

const std::string& PromptLibrary::get(std::string_view key) const {
  const auto it = templates_.find(key);
  if (it == templates_.end()) throw TemplateError("unknown prompt template: " + std::string(key));
  return it->second;
}

std::vector<std::string> PromptLibrary::keys() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : templates_) out.push_back(key);
  return out;
}

std::string strip_sentinel(std::string text) {
  static constexpr std::string_view kSentinel = "<EOS>";
  for (auto pos = text.find(kSentinel); pos != std::string::npos; pos = text.find(kSentinel)) {
    text.erase(pos, kSentinel.size());
  }
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

}  // namespace avalon
