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

#include <optional>
#include <string>
#include <vector>

namespace avalon::testing {

/// Brute-force recounts over raw JSONL text. They read the event JSON
/// directly and share no code with the analytics module. nullopt means an
/// empty denominator.
struct Recount {
  std::optional<double> winning_rate(const std::string& side) const;
  std::optional<double> quest_engagement(const std::string& role_key) const;
  std::optional<double> failure_votes(const std::string& role_key) const;
  std::optional<double> leader_approval(const std::string& role_key) const;

  std::vector<std::string> games;
};

}  // namespace avalon::testing
