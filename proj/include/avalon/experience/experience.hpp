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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "avalon/agent/profile.hpp"
#include "avalon/agent/templates.hpp"
#include "avalon/backend/backend.hpp"
#include "avalon/log/game_log.hpp"

namespace avalon {

inline constexpr int kSuggestionCount = 3;

struct SuggestionSet {
  Role role = Role::LoyalServant;
  /// Exactly kSuggestionCount entries, or none before the first game.
  std::vector<std::string> suggestions;
  std::string source_game;

  bool empty() const { return suggestions.empty(); }
  bool operator==(const SuggestionSet&) const = default;
};

/// Summary of the other roles' play, written for one role.
struct OtherRoleStrategies {
  std::string text;
  std::string source_game;

  bool empty() const { return text.empty(); }
  bool operator==(const OtherRoleStrategies&) const = default;
};

struct RoleExperience {
  std::string strategy;
  SuggestionSet suggestions;
  OtherRoleStrategies others;

  bool operator==(const RoleExperience&) const = default;
};

/// Cross-game state of a series. `version` counts learned games.
class StrategyStore {
 public:
  StrategyStore() = default;
  static StrategyStore from_profiles(const ProfileSet& profiles);

  int version() const { return version_; }
  void bump_version() { ++version_; }

  const RoleExperience& role(Role role) const;
  RoleExperience& role(Role role);
  const std::map<Role, RoleExperience>& roles() const { return roles_; }

  /// `profiles` with each strategy replaced by the stored one.
  ProfileSet apply(ProfileSet profiles) const;

  nlohmann::json to_json() const;
  static StrategyStore from_json(const nlohmann::json& json);
  void save(const std::filesystem::path& path) const;
  static StrategyStore load(const std::filesystem::path& path);

  bool operator==(const StrategyStore&) const = default;

 private:
  int version_ = 0;
  std::map<Role, RoleExperience> roles_;
};

/// Splits a numbered list, a bullet list or blank-line separated
/// paragraphs into items.
std::vector<std::string> parse_suggestions(std::string_view text);

/// Matches "Player 3", "player3", "seat 3", "players 2 and 4".
bool contains_seat_name(std::string_view text);

/// Rewrites seat references into the role names of `assignment`.
std::string scrub_seat_names(std::string_view text, const RoleAssignment& assignment);

/// "Player 1: Merlin, Player 2: Assassin, ..."
std::string role_mapping_text(const RoleAssignment& assignment);

/// The seat's rolled summaries from the log, one "Round N: ..." line each.
std::string round_summaries_text(const GameLog& log, Seat seat);

struct LearningSettings {
  /// IS: rewrite the strategy from the suggestions.
  bool improve_strategy = true;
  /// AO: summarize the other roles' strategies.
  bool learn_from_others = true;
  std::string model = "gpt-3.5-turbo-16k";
  double temperature = 0.3;
  /// Re-asks when the suggestion count is wrong.
  int retry_budget = 2;
};

struct SuggestionResult {
  SuggestionSet set;
  /// False when the previous set was kept.
  bool accepted = true;
  std::string rendered_prompt;
};

class ExperienceLearner {
 public:
  ExperienceLearner(Backend& backend, const PromptLibrary& prompts, LearningSettings settings = {});

  SuggestionResult extract_suggestions(const GameLog& log, Seat seat, const RoleProfile& profile,
                                       const std::string& current_strategy,
                                       const SuggestionSet& previous);
  /// Empty output keeps `current`.
  std::string improve_strategy(const GameLog& log, Seat seat, const std::string& current,
                               const SuggestionSet& suggestions);
  /// Empty output keeps `previous`.
  OtherRoleStrategies summarize_other_strategies(const GameLog& log, Seat seat,
                                                 const OtherRoleStrategies& previous);

  /// One learning step from a finished game for the roles held by
  /// `learning_seats` (the lower seat for Loyal Servant). Bumps the store
  /// version once. Returns the roles whose suggestion set was rejected.
  std::vector<Role> learn_from_game(StrategyStore& store, const GameLog& log,
                                    const std::vector<Seat>& learning_seats,
                                    const ProfileSet& profiles);

  const LearningSettings& settings() const { return settings_; }

 private:
  std::string ask(Stage stage, Seat seat, const std::string& prompt);

  Backend* backend_;
  const PromptLibrary* prompts_;
  LearningSettings settings_;
};

/// Appends the experience block to `base`. Identity when both inputs are
/// empty; a missing part is left out.
std::string inject_experience(const PromptLibrary& prompts, std::string_view base,
                              const SuggestionSet& suggestions,
                              const OtherRoleStrategies& others);

}  // namespace avalon
