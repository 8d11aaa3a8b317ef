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

#include "avalon/experience/experience.hpp"

#include <fstream>
#include <regex>
#include <sstream>
#include <utility>

#include "avalon/error.hpp"

namespace avalon {
namespace {

constexpr auto kIcase = std::regex::ECMAScript | std::regex::icase;

const std::regex& seat_reference() {
  static const std::regex pattern(
      R"(\b(?:players?|seats?)\s*#?\s*([1-6](?:\s*(?:,|and|&|/|or)\s*(?:(?:players?|seats?)\s*#?\s*)?[1-6])*)(?![0-9]))",
      kIcase);
  return pattern;
}

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return "";
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

std::string numbered(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += "\n";
    out += std::to_string(i + 1) + ". " + items[i];
  }
  return out;
}

// A role that has not learned yet stores null.
nlohmann::json suggestions_to_json(const SuggestionSet& set) {
  if (set.empty()) return nullptr;
  return {{"role", role_key(set.role)},
          {"suggestions", set.suggestions},
          {"source_game", set.source_game}};
}

SuggestionSet suggestions_from_json(const nlohmann::json& json, Role role) {
  SuggestionSet set;
  set.role = role;
  if (json.is_null()) return set;
  set.suggestions = json.value("suggestions", std::vector<std::string>{});
  set.source_game = json.value("source_game", "");
  if (set.suggestions.size() != static_cast<std::size_t>(kSuggestionCount)) {
    throw ConfigError("stored suggestion set for " + std::string(role_name(role)) + " has " +
                      std::to_string(set.suggestions.size()) + " entries");
  }
  return set;
}

}  // namespace

StrategyStore StrategyStore::from_profiles(const ProfileSet& profiles) {
  StrategyStore store;
  for (const auto& [role, profile] : profiles) {
    RoleExperience experience;
    experience.strategy = profile.strategy;
    experience.suggestions.role = role;
    store.roles_[role] = std::move(experience);
  }
  return store;
}

const RoleExperience& StrategyStore::role(Role role) const {
  const auto it = roles_.find(role);
  if (it == roles_.end()) throw ConfigError("strategy store has no entry for " + std::string(role_name(role)));
  return it->second;
}

RoleExperience& StrategyStore::role(Role role) {
  const auto it = roles_.find(role);
  if (it == roles_.end()) throw ConfigError("strategy store has no entry for " + std::string(role_name(role)));
  return it->second;
}

ProfileSet StrategyStore::apply(ProfileSet profiles) const {
  for (auto& [role, profile] : profiles) {
    const auto it = roles_.find(role);
    if (it != roles_.end() && !it->second.strategy.empty()) profile.strategy = it->second.strategy;
  }
  return profiles;
}

nlohmann::json StrategyStore::to_json() const {
  nlohmann::json roles = nlohmann::json::object();
  for (const auto& [role, experience] : roles_) {
    roles[std::string(role_key(role))] = {
        {"strategy", experience.strategy},
        {"suggestions", suggestions_to_json(experience.suggestions)},
        {"other_strategies",
         {{"text", experience.others.text}, {"source_game", experience.others.source_game}}}};
  }
  return {{"version", version_}, {"roles", roles}};
}

StrategyStore StrategyStore::from_json(const nlohmann::json& json) {
  StrategyStore store;
  store.version_ = json.value("version", 0);
  if (store.version_ < 0) throw ConfigError("strategy store version must be non-negative");
  for (const auto& [key, value] : json.at("roles").items()) {
    const auto role = parse_role(key);
    if (!role) throw ConfigError("unknown role in strategy store: " + key);
    RoleExperience experience;
    experience.strategy = value.value("strategy", "");
    experience.suggestions =
        suggestions_from_json(value.value("suggestions", nlohmann::json()), *role);
    const auto others = value.value("other_strategies", nlohmann::json::object());
    experience.others.text = others.value("text", "");
    experience.others.source_game = others.value("source_game", "");
    store.roles_[*role] = std::move(experience);
  }
  return store;
}

void StrategyStore::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write strategy store " + path.string());
  out << to_json().dump(2) << '\n';
}

StrategyStore StrategyStore::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read strategy store " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::vector<std::string> parse_suggestions(std::string_view text) {
  static const std::regex marker(
      R"(^\s*(?:\*\*)?(?:suggestion\s*)?(?:\d+\s*[.):]|-|\*|•)(?:\*\*)?\s*(.*)$)", kIcase);
  const std::string cleaned = strip_sentinel(std::string(text));
  std::vector<std::string> lines;
  {
    std::istringstream in(cleaned);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }

  std::vector<std::string> items;
  bool any_marker = false;
  for (const std::string& line : lines) {
    if (std::regex_match(line, marker)) {
      any_marker = true;
      break;
    }
  }
  if (any_marker) {
    bool in_item = false;
    for (const std::string& line : lines) {
      std::smatch match;
      if (std::regex_match(line, match, marker)) {
        items.push_back(trim(match[1].str()));
        in_item = true;
      } else if (in_item && !trim(line).empty()) {
        items.back() += " " + trim(line);
      } else {
        in_item = false;
      }
    }
  } else {
    std::string paragraph;
    for (const std::string& line : lines) {
      if (trim(line).empty()) {
        if (!paragraph.empty()) items.push_back(paragraph);
        paragraph.clear();
      } else {
        paragraph += paragraph.empty() ? trim(line) : " " + trim(line);
      }
    }
    if (!paragraph.empty()) items.push_back(paragraph);
  }
  std::vector<std::string> out;
  for (auto& item : items) {
    if (!item.empty()) out.push_back(std::move(item));
  }
  return out;
}

bool contains_seat_name(std::string_view text) {
  const std::string s(text);
  return std::regex_search(s, seat_reference());
}

std::string scrub_seat_names(std::string_view text, const RoleAssignment& assignment) {
  static const std::regex digit(R"([1-6])");
  const std::string s(text);
  std::string out;
  auto last = s.cbegin();
  for (auto it = std::sregex_iterator(s.begin(), s.end(), seat_reference());
       it != std::sregex_iterator(); ++it) {
    out.append(last, s.cbegin() + it->position());
    const std::string list = (*it)[1].str();
    std::vector<std::string> names;
    for (auto d = std::sregex_iterator(list.begin(), list.end(), digit);
         d != std::sregex_iterator(); ++d) {
      names.emplace_back(role_name(assignment.role_of(Seat(std::stoi(d->str())))));
    }
    std::string replacement = "the " + names.front();
    for (std::size_t i = 1; i < names.size(); ++i) {
      replacement += (i + 1 == names.size() ? " and the " : ", the ") + names[i];
    }
    out += replacement;
    last = s.cbegin() + it->position() + it->length();
  }
  out.append(last, s.cend());
  return out;
}

std::string role_mapping_text(const RoleAssignment& assignment) {
  std::string out;
  for (Seat seat : kAllSeats) {
    if (!out.empty()) out += ", ";
    out += player_name(seat) + ": " + std::string(role_name(assignment.role_of(seat)));
  }
  return out;
}

std::string round_summaries_text(const GameLog& log, Seat seat) {
  std::string out;
  for (const GameEvent* event : log.of_kind(EventKind::MemorySnapshot)) {
    if (event->owner != seat) continue;
    if (!out.empty()) out += "\n";
    out += "Round " + std::to_string(event->round) + ": " +
           event->data.at("rolled_summary").get<std::string>();
  }
  return out.empty() ? std::string("None") : out;
}

ExperienceLearner::ExperienceLearner(Backend& backend, const PromptLibrary& prompts,
                                     LearningSettings settings)
    : backend_(&backend), prompts_(&prompts), settings_(std::move(settings)) {
  if (settings_.retry_budget < 0) throw ConfigError("retry budget must be non-negative");
}

std::string ExperienceLearner::ask(Stage stage, Seat seat, const std::string& prompt) {
  const CompletionRequest request = make_request("", prompt, Purpose::Agent,
                                                 CallTag{stage, seat, 0, -1}, settings_.model,
                                                 settings_.temperature);
  for (int attempt = 0;; ++attempt) {
    try {
      return strip_sentinel(backend_->complete(request));
    } catch (const BackendError& e) {
      if (!e.retryable() || attempt >= settings_.retry_budget) throw;
    }
  }
}

SuggestionResult ExperienceLearner::extract_suggestions(const GameLog& log, Seat seat,
                                                        const RoleProfile& profile,
                                                        const std::string& current_strategy,
                                                        const SuggestionSet& previous) {
  const RoleAssignment assignment = log.assignment();
  const std::string previous_text = previous.empty() ? "None" : numbered(previous.suggestions);
  SuggestionResult result;
  result.rendered_prompt = prompts_->render(
      "suggest", {{"player", player_name(seat)},
                  {"role", std::string(role_name(profile.role))},
                  {"player-role mapping", role_mapping_text(assignment)},
                  {"summary", round_summaries_text(log, seat)},
                  {"goal", profile.goal},
                  {"current strategy", current_strategy},
                  {"suggestions from last game", previous_text}});
  for (int attempt = 0; attempt <= settings_.retry_budget; ++attempt) {
    std::vector<std::string> items;
    try {
      items = parse_suggestions(ask(Stage::Suggest, seat, result.rendered_prompt));
    } catch (const BackendError& e) {
      if (!e.retryable()) throw;
      break;
    }
    if (items.size() == static_cast<std::size_t>(kSuggestionCount)) {
      for (auto& item : items) item = scrub_seat_names(item, assignment);
      result.set = SuggestionSet{profile.role, std::move(items), log.game_id()};
      result.accepted = true;
      return result;
    }
  }
  result.set = previous;
  result.accepted = false;
  return result;
}

std::string ExperienceLearner::improve_strategy(const GameLog& log, Seat seat,
                                                const std::string& current,
                                                const SuggestionSet& suggestions) {
  if (suggestions.empty()) return current;
  const std::string prompt = prompts_->render(
      "improve_strategy", {{"player", player_name(seat)},
                           {"role", std::string(role_name(log.assignment().role_of(seat)))},
                           {"current strategy", current},
                           {"suggestions", numbered(suggestions.suggestions)}});
  std::string improved;
  try {
    improved = ask(Stage::ImproveStrategy, seat, prompt);
  } catch (const BackendError& e) {
    if (!e.retryable()) throw;
    return current;
  }
  if (improved.empty()) return current;
  return scrub_seat_names(improved, log.assignment());
}

OtherRoleStrategies ExperienceLearner::summarize_other_strategies(
    const GameLog& log, Seat seat, const OtherRoleStrategies& previous) {
  const std::string prompt = prompts_->render(
      "other_strategies", {{"player", player_name(seat)},
                           {"player-role mapping", role_mapping_text(log.assignment())},
                           {"summary", round_summaries_text(log, seat)},
                           {"previous strategies", previous.empty() ? "None" : previous.text}});
  std::string text;
  try {
    text = ask(Stage::OtherStrategies, seat, prompt);
  } catch (const BackendError& e) {
    if (!e.retryable()) throw;
    return previous;
  }
  if (text.empty()) return previous;
  return OtherRoleStrategies{scrub_seat_names(text, log.assignment()), log.game_id()};
}

std::vector<Role> ExperienceLearner::learn_from_game(StrategyStore& store, const GameLog& log,
                                                     const std::vector<Seat>& learning_seats,
                                                     const ProfileSet& profiles) {
  if (!log.complete()) throw Error("learning needs a finished game");
  const RoleAssignment assignment = log.assignment();
  std::map<Role, Seat> learners;
  for (Seat seat : learning_seats) {
    const Role role = assignment.role_of(seat);
    const auto it = learners.find(role);
    if (it == learners.end() || seat < it->second) learners.insert_or_assign(role, seat);
  }
  std::vector<Role> rejected;
  for (const auto& [role, seat] : learners) {
    RoleExperience& experience = store.role(role);
    const RoleProfile& profile = profiles.at(role);
    SuggestionResult suggestions =
        extract_suggestions(log, seat, profile, experience.strategy, experience.suggestions);
    if (!suggestions.accepted) rejected.push_back(role);
    experience.suggestions = std::move(suggestions.set);
    if (settings_.improve_strategy && suggestions.accepted) {
      experience.strategy =
          improve_strategy(log, seat, experience.strategy, experience.suggestions);
    }
    if (settings_.learn_from_others) {
      experience.others = summarize_other_strategies(log, seat, experience.others);
    }
  }
  store.bump_version();
  return rejected;
}

std::string inject_experience(const PromptLibrary& prompts, std::string_view base,
                              const SuggestionSet& suggestions,
                              const OtherRoleStrategies& others) {
  if (suggestions.empty() && others.empty()) return std::string(base);
  std::string out(base);
  out += "\n" + prompts.get("experience_header");
  if (!suggestions.empty()) {
    out += "\n" + prompts.render("experience_suggestions",
                                 {{"suggestion", numbered(suggestions.suggestions)}});
  }
  if (!others.empty()) {
    out += "\n" + prompts.render("experience_others", {{"other strategy", others.text}});
  }
  return out;
}

}  // namespace avalon
