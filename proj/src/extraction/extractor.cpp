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

#include "avalon/extraction/extractor.hpp"

#include <algorithm>
#include <regex>
#include <utility>

#include "avalon/embedded_data.hpp"
#include "avalon/error.hpp"

namespace avalon {
namespace {

constexpr auto kIcase = std::regex::ECMAScript | std::regex::icase;

int count_matches(std::string_view text, const std::regex& pattern) {
  const std::string s(text);
  return static_cast<int>(
      std::distance(std::sregex_iterator(s.begin(), s.end(), pattern), std::sregex_iterator()));
}

bool contains(std::string_view text, const std::regex& pattern) {
  const std::string s(text);
  return std::regex_search(s, pattern);
}

std::vector<Seat> dedupe_within(const std::vector<Seat>& seats,
                                const std::vector<Seat>& candidates) {
  std::vector<Seat> out;
  for (Seat s : seats) {
    const bool legal = std::find(candidates.begin(), candidates.end(), s) != candidates.end();
    const bool fresh = std::find(out.begin(), out.end(), s) == out.end();
    if (legal && fresh) out.push_back(s);
  }
  return out;
}

std::string_view prompt_key(Expected kind) {
  switch (kind) {
    case Expected::PlayerChoice: return "extractor_player_choice";
    case Expected::TeamVote: return "extractor_team_vote";
    case Expected::QuestCard: return "extractor_quest_card";
    case Expected::NonVerbal: return "extractor_nonverbal";
    case Expected::Target: return "extractor_target";
    case Expected::FreeSpeech: break;
  }
  throw Error("free speech is not sent to the extractor");
}

/// The text after "<label>:" on the first line that has it, lowercased.
std::optional<std::string> answer_field(const std::string& answer, std::string_view label) {
  const std::regex pattern(std::string("\\b") + std::string(label) + "\\s*:\\s*([^\\n]*)", kIcase);
  std::smatch match;
  if (!std::regex_search(answer, match, pattern)) return std::nullopt;
  std::string value = match[1].str();
  std::transform(value.begin(), value.end(), value.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return value;
}

std::optional<std::vector<Seat>> parse_player_answer(const std::string& answer) {
  const auto field = answer_field(answer, "players");
  if (!field) return std::nullopt;
  std::vector<Seat> seats;
  static const std::regex digit(R"((^|[^0-9])([1-6])(?![0-9]))");
  for (auto it = std::sregex_iterator(field->begin(), field->end(), digit);
       it != std::sregex_iterator(); ++it) {
    seats.push_back(Seat(std::stoi((*it)[2].str())));
  }
  if (seats.empty() && field->find("none") == std::string::npos) return std::nullopt;
  return seats;
}

}  // namespace

ExtractionContext ExtractionContext::player_choice(int required_count,
                                                   std::vector<Seat> candidates) {
  ExtractionContext ctx;
  ctx.expected = Expected::PlayerChoice;
  ctx.required_count = required_count;
  ctx.candidates = std::move(candidates);
  return ctx;
}

ExtractionContext ExtractionContext::of(Expected expected) {
  ExtractionContext ctx;
  ctx.expected = expected;
  return ctx;
}

ExtractionContext ExtractionContext::target(std::vector<Seat> candidates, bool mandatory) {
  ExtractionContext ctx;
  ctx.expected = Expected::Target;
  ctx.candidates = std::move(candidates);
  ctx.mandatory = mandatory;
  return ctx;
}

void ExtractionContext::validate() const {
  if (expected == Expected::PlayerChoice) {
    if (required_count != 2 && required_count != 3) {
      throw ConfigError("player choice must require 2 or 3 seats");
    }
    if (static_cast<int>(dedupe_within(candidates, candidates).size()) < required_count) {
      throw ConfigError("not enough candidates for the player choice");
    }
  }
  if (expected == Expected::Target && candidates.empty()) {
    throw ConfigError("target choice needs candidates");
  }
  if (retry_budget < 0) throw ConfigError("retry budget must be non-negative");
}

namespace rule_extract {

std::vector<Seat> mentioned_seats(std::string_view text, std::optional<Seat> self) {
  static const std::regex mention(
      R"(\b(?:players?|seats?)\s*#?\s*([1-6](?:\s*(?:,|and|&|/|or)\s*(?:(?:players?|seats?)\s*#?\s*)?[1-6])*)(?![0-9]))",
      kIcase);
  static const std::regex digit(R"([1-6])");
  static const std::regex myself(R"(\bmyself\b)", kIcase);

  const std::string s(text);
  std::vector<std::pair<std::ptrdiff_t, Seat>> hits;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), mention); it != std::sregex_iterator();
       ++it) {
    const std::string list = (*it)[1].str();
    std::ptrdiff_t offset = it->position(1);
    for (auto d = std::sregex_iterator(list.begin(), list.end(), digit);
         d != std::sregex_iterator(); ++d) {
      hits.emplace_back(offset + d->position(), Seat(std::stoi(d->str())));
    }
  }
  if (self) {
    for (auto it = std::sregex_iterator(s.begin(), s.end(), myself); it != std::sregex_iterator();
         ++it) {
      hits.emplace_back(it->position(), *self);
    }
  }
  std::stable_sort(hits.begin(), hits.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Seat> seats;
  for (const auto& [pos, seat] : hits) {
    if (std::find(seats.begin(), seats.end(), seat) == seats.end()) seats.push_back(seat);
  }
  return seats;
}

std::optional<Vote> team_vote(std::string_view text) {
  static const std::regex disagree(R"(\b(disagree|disagrees|reject|oppose|against|veto)\b)",
                                   kIcase);
  static const std::regex negated(
      R"(\b(do not|don't|dont|cannot|can't|won't|will not|not)\s+(agree|approve|support|accept)\b)",
      kIcase);
  static const std::regex agree(R"(\b(agree|agrees|approve|support|accept|in favou?r)\b)",
                                kIcase);
  static const std::regex vote_yes(R"(\bvote\s+yes\b)", kIcase);
  static const std::regex vote_no(R"(\bvote\s+no\b)", kIcase);

  const int negations = count_matches(text, negated);
  const int against = count_matches(text, disagree) + count_matches(text, vote_no) + negations;
  const int in_favour = count_matches(text, agree) + count_matches(text, vote_yes) - negations;
  if (against > 0 && in_favour <= 0) return Vote::Disagree;
  if (in_favour > 0 && against == 0) return Vote::Agree;
  return std::nullopt;
}

std::optional<QuestCard> quest_card(std::string_view text) {
  static const std::regex fail(R"(\b(fail|fails|failed|failing|failure|sabotage)\b)", kIcase);
  static const std::regex success(R"(\b(succeed|succeeds|success|successful|succeeding)\b)",
                                  kIcase);
  const bool says_fail = contains(text, fail);
  const bool says_success = contains(text, success);
  if (says_fail && !says_success) return QuestCard::Fail;
  if (says_success && !says_fail) return QuestCard::Success;
  return std::nullopt;
}

std::optional<NonVerbal> nonverbal(std::string_view text) {
  static const std::regex raise(R"(\b(raise[sd]?|put|hold)\s+(up\s+)?(my\s+|our\s+|the\s+)?hands?(\s+up)?\b|\bhands?\s+up\b)", kIcase);
  static const std::regex lower(R"(\b(lower[sd]?|put)\s+(my\s+|our\s+|the\s+)?hands?\s+down\b|\bhands?\s+down\b)", kIcase);
  static const std::regex open(R"(\bopen(s|ed)?\s+(my\s+|our\s+)?eyes\b)", kIcase);
  static const std::regex close(R"(\bclose[sd]?\s+(my\s+|our\s+)?eyes\b)", kIcase);
  // "down" is the more specific phrase, so test it before "raise/put ... hands".
  if (contains(text, lower)) return NonVerbal::LowerHands;
  if (contains(text, raise)) return NonVerbal::RaiseHands;
  if (contains(text, open)) return NonVerbal::OpenEyes;
  if (contains(text, close)) return NonVerbal::CloseEyes;
  return std::nullopt;
}

bool declares_silence(std::string_view text) {
  static const std::regex silent(R"(\b(remain|stay|keep|be)\s+(silent|quiet)\b|\bi\s+pass\b)",
                                 kIcase);
  return contains(text, silent);
}

Action free_speech(std::string_view text, std::optional<Seat> self) {
  if (declares_silence(text)) return Silent{};
  if (auto signal = nonverbal(text)) return Signal{*signal};
  if (auto seats = mentioned_seats(text, self); !seats.empty()) return ChoosePlayers{seats};
  if (auto vote = team_vote(text)) return CastVote{*vote};
  return Silent{};
}

}  // namespace rule_extract

const nlohmann::json& default_demonstrations() {
  static const nlohmann::json demos = nlohmann::json::parse(embedded::kDemonstrations);
  return demos;
}

std::vector<Seat> random_fill(std::vector<Seat> chosen, const std::vector<Seat>& candidates,
                              int count, SeededRng& rng) {
  std::vector<Seat> remaining;
  for (Seat s : candidates) {
    const bool taken = std::find(chosen.begin(), chosen.end(), s) != chosen.end();
    const bool listed = std::find(remaining.begin(), remaining.end(), s) != remaining.end();
    if (!taken && !listed) remaining.push_back(s);
  }
  while (static_cast<int>(chosen.size()) < count && !remaining.empty()) {
    const auto pick = static_cast<std::ptrdiff_t>(rng.below(remaining.size()));
    chosen.push_back(remaining[static_cast<std::size_t>(pick)]);
    remaining.erase(remaining.begin() + pick);
  }
  return chosen;
}

ActionExtractor::ActionExtractor(Backend* backend, const PromptLibrary& prompts,
                                 nlohmann::json demonstrations, ExtractorSettings settings)
    : backend_(backend),
      prompts_(&prompts),
      demonstrations_(std::move(demonstrations)),
      settings_(std::move(settings)) {}

ActionExtractor ActionExtractor::rules_only() {
  return ActionExtractor(nullptr, PromptLibrary::defaults(), default_demonstrations());
}

std::string ActionExtractor::render_prompt(Expected kind, const std::string& text,
                                           int required_count) const {
  const std::string task = prompts_->render(
      prompt_key(kind), {{"Count", std::to_string(required_count)}});
  std::string demos;
  const std::string demo_key(expected_name(kind));
  if (demonstrations_.contains(demo_key)) {
    for (const auto& demo : demonstrations_.at(demo_key)) {
      if (!demos.empty()) demos += "\n";
      demos += "Statement: " + demo.at("statement").get<std::string>() +
               "\nAnswer: " + demo.at("answer").get<std::string>();
    }
  }
  return prompts_->render("extractor",
                          {{"Task", task}, {"Demonstrations", demos}, {"Statement", text}});
}

std::optional<std::string> ActionExtractor::ask(Expected kind, const std::string& text,
                                                int required_count, CallTag tag) {
  if (backend_ == nullptr) return std::nullopt;
  tag.stage = Stage::Extract;
  const CompletionRequest request =
      make_request("", render_prompt(kind, text, required_count), Purpose::Extractor, tag,
                   settings_.model, settings_.temperature);
  for (int attempt = 0; attempt <= settings_.retry_budget; ++attempt) {
    try {
      return backend_->complete(request);
    } catch (const BackendError& e) {
      if (!e.retryable()) throw;
    }
  }
  return std::nullopt;
}

std::vector<Seat> ActionExtractor::parse_players(const std::string& text,
                                                 const ExtractionContext& ctx, CallTag tag) {
  std::optional<std::vector<Seat>> seats;
  if (auto answer = ask(Expected::PlayerChoice, text, ctx.required_count, tag)) {
    seats = parse_player_answer(*answer);
  }
  if (!seats) seats = rule_extract::mentioned_seats(text, ctx.self);
  return dedupe_within(*seats, ctx.candidates);
}

std::vector<Seat> ActionExtractor::extract_players(const std::string& text,
                                                   const ExtractionContext& ctx,
                                                   const Reasker& reask, SeededRng& rng,
                                                   CallTag tag) {
  ctx.validate();
  const auto required = static_cast<std::size_t>(ctx.required_count);
  std::vector<Seat> seats = parse_players(text, ctx, tag);
  for (int attempt = 1; seats.size() < required && reask && attempt <= ctx.retry_budget;
       ++attempt) {
    seats = parse_players(reask(attempt), ctx, tag);
  }
  if (seats.size() > required) seats.erase(seats.begin() + ctx.required_count, seats.end());
  return random_fill(std::move(seats), ctx.candidates, ctx.required_count, rng);
}

Vote ActionExtractor::extract_team_vote(const std::string& text, CallTag tag) {
  if (auto answer = ask(Expected::TeamVote, text, 0, tag)) {
    if (auto field = answer_field(*answer, "vote")) {
      if (field->starts_with("disagree")) return Vote::Disagree;
      if (field->starts_with("agree")) return Vote::Agree;
      if (field->starts_with("unclear")) return Vote::Agree;
    }
  }
  return rule_extract::team_vote(text).value_or(Vote::Agree);
}

QuestCard ActionExtractor::extract_quest_card(const std::string& text, CallTag tag) {
  if (auto answer = ask(Expected::QuestCard, text, 0, tag)) {
    if (auto field = answer_field(*answer, "quest")) {
      if (field->starts_with("success")) return QuestCard::Success;
      if (field->starts_with("fail")) return QuestCard::Fail;
      if (field->starts_with("unclear")) return QuestCard::Fail;
    }
  }
  return rule_extract::quest_card(text).value_or(QuestCard::Fail);
}

std::optional<NonVerbal> ActionExtractor::extract_nonverbal(const std::string& text,
                                                            CallTag tag) {
  if (auto answer = ask(Expected::NonVerbal, text, 0, tag)) {
    if (auto field = answer_field(*answer, "signal")) {
      if (field->starts_with("none")) return std::nullopt;
      if (auto signal = rule_extract::nonverbal(*field)) return signal;
    }
  }
  return rule_extract::nonverbal(text);
}

std::optional<Seat> ActionExtractor::extract_target(const std::string& text,
                                                    const ExtractionContext& ctx,
                                                    const Reasker& reask, SeededRng& rng,
                                                    CallTag tag) {
  ctx.validate();
  auto parse = [&](const std::string& statement) -> std::optional<Seat> {
    std::optional<std::vector<Seat>> seats;
    if (auto answer = ask(Expected::Target, statement, 1, tag)) {
      if (auto field = answer_field(*answer, "target")) {
        if (field->starts_with("none")) {
          seats.emplace();
        } else {
          seats = parse_player_answer("players: " + *field);
        }
      }
    }
    if (!seats) seats = rule_extract::mentioned_seats(statement, std::nullopt);
    const auto legal = dedupe_within(*seats, ctx.candidates);
    if (legal.empty()) return std::nullopt;
    return legal.front();
  };

  if (auto seat = parse(text)) return seat;
  if (!ctx.mandatory) return std::nullopt;
  for (int attempt = 1; reask && attempt <= ctx.retry_budget; ++attempt) {
    if (auto seat = parse(reask(attempt))) return seat;
  }
  return random_fill({}, ctx.candidates, 1, rng).front();
}

Action ActionExtractor::extract(const std::string& text, const ExtractionContext& ctx,
                                const Reasker& reask, SeededRng& rng, CallTag tag) {
  switch (ctx.expected) {
    case Expected::PlayerChoice:
      return ChoosePlayers{extract_players(text, ctx, reask, rng, tag)};
    case Expected::TeamVote:
      return CastVote{extract_team_vote(text, tag)};
    case Expected::QuestCard:
      return PlayCard{extract_quest_card(text, tag)};
    case Expected::NonVerbal:
      if (auto signal = extract_nonverbal(text, tag)) return Signal{*signal};
      return Silent{};
    case Expected::Target:
      if (auto seat = extract_target(text, ctx, reask, rng, tag)) return ChoosePlayers{{*seat}};
      return Silent{};
    case Expected::FreeSpeech:
      return rule_extract::free_speech(text, ctx.self);
  }
  return Silent{};
}

Action ActionExtractor::default_action(const ExtractionContext& ctx, SeededRng& rng) {
  switch (ctx.expected) {
    case Expected::PlayerChoice:
      return ChoosePlayers{random_fill({}, ctx.candidates, ctx.required_count, rng)};
    case Expected::TeamVote:
      return CastVote{Vote::Agree};
    case Expected::QuestCard:
      return PlayCard{QuestCard::Fail};
    case Expected::Target:
      if (ctx.mandatory) return ChoosePlayers{random_fill({}, ctx.candidates, 1, rng)};
      return Silent{};
    case Expected::NonVerbal:
    case Expected::FreeSpeech:
      return Silent{};
  }
  return Silent{};
}

}  // namespace avalon
