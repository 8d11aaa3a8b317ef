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

#include "avalon/game/types.hpp"

#include <algorithm>
#include <cctype>

namespace avalon {
namespace {

std::string lowered(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '-' || c == ' ') c = '_';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

std::string player_name(Seat seat) { return "Player " + std::to_string(seat.index()); }

std::string_view role_name(Role role) {
  switch (role) {
    case Role::Merlin: return "Merlin";
    case Role::Percival: return "Percival";
    case Role::LoyalServant: return "Loyal Servant";
    case Role::Morgana: return "Morgana";
    case Role::Assassin: return "Assassin";
  }
  return "?";
}

std::string_view role_key(Role role) {
  switch (role) {
    case Role::Merlin: return "merlin";
    case Role::Percival: return "percival";
    case Role::LoyalServant: return "loyal_servant";
    case Role::Morgana: return "morgana";
    case Role::Assassin: return "assassin";
  }
  return "?";
}

std::string_view side_name(Side side) { return side == Side::Good ? "good" : "evil"; }
std::string_view vote_name(Vote vote) { return vote == Vote::Agree ? "agree" : "disagree"; }
std::string_view card_name(QuestCard card) {
  return card == QuestCard::Success ? "success" : "fail";
}
std::string_view outcome_name(QuestOutcome outcome) {
  return outcome == QuestOutcome::Succeeded ? "succeeded" : "failed";
}

std::string_view nonverbal_name(NonVerbal signal) {
  switch (signal) {
    case NonVerbal::RaiseHands: return "raise_hands";
    case NonVerbal::LowerHands: return "lower_hands";
    case NonVerbal::OpenEyes: return "open_eyes";
    case NonVerbal::CloseEyes: return "close_eyes";
  }
  return "?";
}

std::optional<Role> parse_role(std::string_view text) {
  const std::string key = lowered(text);
  for (Role role : kAllRoles) {
    if (key == role_key(role)) return role;
  }
  return std::nullopt;
}

std::optional<Side> parse_side(std::string_view text) {
  const std::string key = lowered(text);
  if (key == "good") return Side::Good;
  if (key == "evil") return Side::Evil;
  return std::nullopt;
}

std::optional<Vote> parse_vote(std::string_view text) {
  const std::string key = lowered(text);
  if (key == "agree") return Vote::Agree;
  if (key == "disagree") return Vote::Disagree;
  return std::nullopt;
}

std::optional<QuestCard> parse_card(std::string_view text) {
  const std::string key = lowered(text);
  if (key == "success") return QuestCard::Success;
  if (key == "fail") return QuestCard::Fail;
  return std::nullopt;
}

std::optional<QuestOutcome> parse_outcome(std::string_view text) {
  const std::string key = lowered(text);
  if (key == "succeeded") return QuestOutcome::Succeeded;
  if (key == "failed") return QuestOutcome::Failed;
  return std::nullopt;
}

std::optional<NonVerbal> parse_nonverbal(std::string_view text) {
  const std::string key = lowered(text);
  for (NonVerbal signal : {NonVerbal::RaiseHands, NonVerbal::LowerHands, NonVerbal::OpenEyes,
                           NonVerbal::CloseEyes}) {
    if (key == nonverbal_name(signal)) return signal;
  }
  return std::nullopt;
}

}  // namespace avalon
