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

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace avalon {

using TemplateValues = std::map<std::string, std::string, std::less<>>;

/// Placeholder names ("Role Information", "Player i", ...) in order of
/// first appearance.
std::vector<std::string> placeholders(std::string_view text);

/// Single-pass substitution of every {Name}. A placeholder without a value
/// throws TemplateError; inserted values are never re-scanned.
std::string render_template(std::string_view text, const TemplateValues& values);

/// Removes every "<EOS>" sentinel and surrounding whitespace.
std::string strip_sentinel(std::string text);

/// Named prompt templates. Defaults are compiled in from data/prompts.json;
/// an override file replaces individual entries.
class PromptLibrary {
 public:
  static const PromptLibrary& defaults();
  /// Defaults with the entries of `overrides` replaced.
  static PromptLibrary with_overrides(const nlohmann::json& overrides);
  static PromptLibrary load(const std::filesystem::path& path);

  /// Throws TemplateError for an unknown key.
  const std::string& get(std::string_view key) const;
  std::string render(std::string_view key, const TemplateValues& values) const {
    return render_template(get(key), values);
  }
  std::vector<std::string> keys() const;

 private:
  std::map<std::string, std::string, std::less<>> templates_;
};

}  // namespace avalon
