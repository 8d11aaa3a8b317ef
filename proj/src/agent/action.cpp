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

#include "avalon/agent/action.hpp"

#include "avalon/error.hpp"

namespace avalon {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr Expected kExpectedKinds[] = {Expected::PlayerChoice, Expected::TeamVote,
                                       Expected::QuestCard,    Expected::NonVerbal,
                                       Expected::FreeSpeech,   Expected::Target};

std::string signal_phrase(NonVerbal signal) {
  switch (signal) {
    case NonVerbal::RaiseHands: return "raise hands up";
    case NonVerbal::LowerHands: return "put hands down";
    case NonVerbal::OpenEyes: return "open eyes";
    case NonVerbal::CloseEyes: return "close eyes";
  }
  return "?";
}

}  // namespace

std::string_view expected_name(Expected expected) {
  switch (expected) {
    case Expected::PlayerChoice: return "player_choice";
    case Expected::TeamVote: return "team_vote";
    case Expected::QuestCard: return "quest_card";
    case Expected::NonVerbal: return "nonverbal";
    case Expected::FreeSpeech: return "free_speech";
    case Expected::Target: return "target";
  }
  return "?";
}

std::optional<Expected> parse_expected(std::string_view text) {
  for (Expected e : kExpectedKinds) {
    if (expected_name(e) == text) return e;
  }
  return std::nullopt;
}

std::string seat_list(const std::vector<Seat>& seats) {
  std::string out;
  for (std::size_t i = 0; i < seats.size(); ++i) {
    if (i > 0) out += ", ";
    out += player_name(seats[i]);
  }
  return out;
}

std::string describe_action(const Action& action) {
  return std::visit(
      Overloaded{
          [](const ChoosePlayers& a) { return "choose players: " + seat_list(a.seats); },
          [](const CastVote& a) { return "vote: " + std::string(vote_name(a.vote)); },
          [](const PlayCard& a) {
            return std::string(a.card == QuestCard::Success ? "make the quest succeed"
                                                            : "make the quest fail");
          },
          [](const Signal& a) { return "non-verbal signal: " + signal_phrase(a.signal); },
          [](const Silent&) { return std::string("remain silent"); },
      },
      action);
}

std::string public_statement(const Action& action) {
  return std::visit(
      Overloaded{
          [](const ChoosePlayers& a) { return "I choose " + seat_list(a.seats) + "."; },
          [](const CastVote& a) {
            return std::string(a.vote == Vote::Agree ? "I agree with this team."
                                                     : "I disagree with this team.");
          },
          [](const PlayCard&) { return std::string("I have made my choice for the quest."); },
          [](const Signal& a) { return "I " + signal_phrase(a.signal) + "."; },
          [](const Silent&) { return std::string("I remain silent."); },
      },
      action);
}

nlohmann::json action_to_json(const Action& action) {
  return std::visit(
      Overloaded{
          [](const ChoosePlayers& a) {
            nlohmann::json seats = nlohmann::json::array();
            for (Seat s : a.seats) seats.push_back(s.index());
            return nlohmann::json{{"kind", "choose_players"}, {"seats", seats}};
          },
          [](const CastVote& a) {
            return nlohmann::json{{"kind", "vote"}, {"vote", vote_name(a.vote)}};
          },
          [](const PlayCard& a) {
            return nlohmann::json{{"kind", "quest_card"}, {"card", card_name(a.card)}};
          },
          [](const Signal& a) {
            return nlohmann::json{{"kind", "nonverbal"}, {"signal", nonverbal_name(a.signal)}};
          },
          [](const Silent&) { return nlohmann::json{{"kind", "silent"}}; },
      },
      action);
}

Action action_from_json(const nlohmann::json& json) {
  const std::string kind = json.at("kind").get<std::string>();
  if (kind == "choose_players") {
    ChoosePlayers choose;
    for (const auto& s : json.at("seats")) choose.seats.push_back(Seat(s.get<int>()));
    return choose;
  }
  if (kind == "vote") {
    if (auto v = parse_vote(json.at("vote").get<std::string>())) return CastVote{*v};
  } else if (kind == "quest_card") {
    if (auto c = parse_card(json.at("card").get<std::string>())) return PlayCard{*c};
  } else if (kind == "nonverbal") {
    if (auto s = parse_nonverbal(json.at("signal").get<std::string>())) return Signal{*s};
  } else if (kind == "silent") {
    return Silent{};
  }
  throw Error("malformed action record: " + json.dump());
}

}  // namespace avalon
