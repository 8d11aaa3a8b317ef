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

#include "avalon/orchestrator/canned.hpp"

#include <regex>

#include "avalon/error.hpp"
#include "avalon/extraction/extractor.hpp"

namespace avalon {
namespace {

constexpr auto kIcase = std::regex::ECMAScript | std::regex::icase;

const std::string& user_text(const CompletionRequest& request) {
  for (auto it = request.messages.rbegin(); it != request.messages.rend(); ++it) {
    if (it->role == MessageRole::User) return it->content;
  }
  throw Error("request has no user message");
}

std::uint64_t text_hash(const std::string& text) { return derive_seed(0, text); }

int seat_number(const CompletionRequest& request) {
  return request.tag.seat ? request.tag.seat->index() : 1;
}

Seat other_seat(int self, int offset) { return Seat((self - 1 + offset) % kPlayerCount + 1); }

/// The decision a canned player takes for an instruction, as a sentence the
/// extractor can read.
std::string decide(const std::string& instruction, const CompletionRequest& request) {
  static const std::regex choose(R"(choose\s+(\d)\s+players)", kIcase);
  static const std::regex vote(R"(agree or disagree)", kIcase);
  static const std::regex quest(R"(succeed or fail)", kIcase);
  static const std::regex merlin(R"(believe is Merlin)", kIcase);
  static const std::regex may(R"(\bmay\b)", kIcase);
  const int self = seat_number(request);
  const int round = request.tag.round;
  std::smatch match;
  if (std::regex_search(instruction, match, choose)) {
    const int count = std::stoi(match[1].str());
    std::vector<Seat> team = {Seat(self)};
    for (int i = 1; static_cast<int>(team.size()) < count; ++i) team.push_back(other_seat(self, i));
    return "I choose " + seat_list(team) + " for this quest.";
  }
  if (std::regex_search(instruction, vote)) {
    if ((self + round) % 4 == 0) return "I disagree with this team.";
    return "I agree with this team.";
  }
  if (std::regex_search(instruction, quest)) return "I will make the quest fail.";
  if (std::regex_search(instruction, merlin)) {
    if (std::regex_search(instruction, may) && round % 2 == 1) return "I pass for now.";
    return "I name " + player_name(other_seat(self, round % 5 + 1)) + " as Merlin.";
  }
  const Seat trusted = other_seat(self, round % 5 + 1);
  return "I trust " + player_name(trusted) + " and I think this team can work.";
}

std::string extractor_answer(const std::string& prompt) {
  const auto at = prompt.rfind("Statement: ");
  std::string statement = at == std::string::npos ? prompt : prompt.substr(at + 11);
  if (const auto end = statement.rfind("\nAnswer:"); end != std::string::npos) {
    statement.resize(end);
  }
  if (prompt.find("'target: none'") != std::string::npos) {
    const auto seats = rule_extract::mentioned_seats(statement);
    return seats.empty() ? "target: none" : "target: " + std::to_string(seats.front().index());
  }
  if (prompt.find("'players: none'") != std::string::npos) {
    const auto seats = rule_extract::mentioned_seats(statement);
    if (seats.empty()) return "players: none";
    std::string out = "players: ";
    for (std::size_t i = 0; i < seats.size(); ++i) {
      out += (i ? ", " : "") + std::to_string(seats[i].index());
    }
    return out;
  }
  if (prompt.find("'vote: unclear'") != std::string::npos) {
    const auto v = rule_extract::team_vote(statement);
    return std::string("vote: ") + (v ? std::string(vote_name(*v)) : "unclear");
  }
  if (prompt.find("'quest: unclear'") != std::string::npos) {
    const auto c = rule_extract::quest_card(statement);
    return std::string("quest: ") + (c ? std::string(card_name(*c)) : "unclear");
  }
  if (prompt.find("'signal: none'") != std::string::npos) {
    const auto s = rule_extract::nonverbal(statement);
    return s ? "signal: " + public_statement(Signal{*s}).substr(2) : "signal: none";
  }
  return "unclear";
}

std::string judge_answer(const std::string& prompt) {
  const std::uint64_t h = text_hash(prompt);
  if (h % 7 == 0) return "I cannot tell from this statement.";
  if (prompt.find("self_proposal or no_self_proposal") != std::string::npos) {
    return h % 2 ? "self_proposal" : "no_self_proposal";
  }
  if (prompt.find("self_disclosure") != std::string::npos) {
    static const char* labels[] = {"self_disclosure", "camouflage", "withholding"};
    return labels[h % 3];
  }
  static const char* labels[] = {"trust", "distrust", "ambivalent"};
  return std::string("Label: ") + labels[h % 3];
}

std::string role_in_prompt(const std::string& prompt) {
  static const std::regex role(R"(of the role ([A-Za-z ]+?) (?:in|a) Avalon)", kIcase);
  std::smatch match;
  if (std::regex_search(prompt, match, role)) return match[1].str();
  return "this role";
}

}  // namespace

std::optional<std::string> instruction_in_prompt(const std::string& prompt) {
  static const std::string marker = "Host's Instruction: ";
  const auto at = prompt.rfind(marker);
  if (at == std::string::npos) return std::nullopt;
  std::string text = prompt.substr(at + marker.size());
  if (const auto end = text.find("\ncurrent actions:"); end != std::string::npos) {
    text.resize(end);
  }
  return text;
}

std::string canned_response(const CompletionRequest& request) {
  const std::string& prompt = user_text(request);
  const std::string self = player_name(Seat(seat_number(request)));
  const std::string round = std::to_string(request.tag.round);
  switch (request.tag.stage) {
    case Stage::Summarize:
    case Stage::EmergencySummarize:
      return "Round " + round + " as seen by " + self + ": the team was debated, votes were cast "
             "and the quest was resolved.";
    case Stage::Analysis:
      return "No player is confirmed yet; watch who pushes for quick team approvals.";
    case Stage::Planning:
      return "Back teams that look balanced and watch the voting pattern in round " + round + ".";
    case Stage::Action:
    case Stage::Response: {
      const auto instruction = instruction_in_prompt(prompt);
      std::string answer = instruction ? decide(*instruction, request) : "I remain silent.";
      if (request.tag.stage == Stage::Response) answer += " That is my answer.";
      return answer + " <EOS>";
    }
    case Stage::Extract:
      return extractor_answer(prompt);
    case Stage::Judge:
      return judge_answer(prompt);
    case Stage::Suggest: {
      const std::string role = role_in_prompt(prompt);
      return "Here are my suggestions.\n1. As " + role +
             ", keep an eye on Player 3 when the first team is proposed.\n2. Vote against teams "
             "that repeat a failed quest member.\n3. Speak early in round 1 and keep your claims "
             "consistent with seat 2 and seat 5.";
    }
    case Stage::ImproveStrategy:
      return "Stay consistent in every claim, watch Player 4 closely, and support teams that "
             "match the voting record.";
    case Stage::OtherStrategies:
      return "The strategy of Merlin is that he hints at Player 5 without naming roles. The "
             "strategy of Assassin is that he watches players 1 and 2 for knowledge.";
  }
  return "I remain silent.";
}

std::unique_ptr<ScriptedBackend> make_canned_backend(const nlohmann::json& script) {
  if (script.is_null()) return std::make_unique<ScriptedBackend>(canned_response);
  return std::make_unique<ScriptedBackend>(ScriptedBackend::from_json(script, canned_response));
}

}  // namespace avalon
