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

#include <gtest/gtest.h>

#include <sstream>

#include "avalon/log/game_log.hpp"
#include "avalon/orchestrator/canned.hpp"
#include "games.hpp"

namespace avalon {
namespace {

using testing::play_pipeline_game;
using testing::play_rule_bot_game;

std::vector<nlohmann::json> lines_of(const GameLog& log) {
  std::vector<nlohmann::json> out;
  for (const auto& event : log.events()) out.push_back(event_to_json(event));
  return out;
}

GameLog from_lines(const std::vector<nlohmann::json>& lines) {
  std::string text;
  for (const auto& line : lines) text += line.dump() + "\n";
  return GameLog::from_jsonl(text);
}

TEST(GameLog, JsonlRoundTripIsExact) {
  const auto log = play_rule_bot_game(4);
  const std::string text = log.to_jsonl();
  const auto back = GameLog::from_jsonl(text);
  EXPECT_EQ(back.events(), log.events());
  EXPECT_EQ(back.to_jsonl(), text);
  EXPECT_EQ(text.back(), '\n');
}

TEST(GameLog, SequenceIsDenseFromZero) {
  const auto log = play_rule_bot_game(9);
  for (std::size_t i = 0; i < log.events().size(); ++i) EXPECT_EQ(log.events()[i].seq, i);
  EXPECT_EQ(log.events().front().kind, EventKind::GameStart);
  EXPECT_TRUE(log.complete());
  EXPECT_FALSE(log.aborted());
}

TEST(GameLog, RejectsSequenceGaps) {
  auto lines = lines_of(play_rule_bot_game(1));
  lines.erase(lines.begin() + 3);
  EXPECT_THROW(from_lines(lines), Error);
}

TEST(GameLog, StartFieldsReadBack) {
  const auto log = play_rule_bot_game(21);
  EXPECT_EQ(log.seed(), 21U);
  EXPECT_EQ(log.strategy_version(), 0);
  EXPECT_EQ(log.config().quest_team_sizes, GameConfig{}.quest_team_sizes);
  EXPECT_EQ(log.assignment(), assign_roles(21));
  EXPECT_THROW(GameLog().game_id(), Error);
}

TEST(GameLog, EventKindNames) {
  for (int k = 0; k <= static_cast<int>(EventKind::GameAborted); ++k) {
    const auto kind = static_cast<EventKind>(k);
    EXPECT_EQ(parse_event_kind(event_kind_name(kind)), kind);
  }
  EXPECT_EQ(parse_event_kind("nonsense"), std::nullopt);
}

TEST(ValidateLog, RuleBotGamesReplayThroughTheEngine) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto log = play_rule_bot_game(seed);
    const auto state = validate_log(log);
    ASSERT_TRUE(state.winner) << "seed " << seed;
    EXPECT_EQ(*state.winner, *log.winner()) << "seed " << seed;
  }
}

TEST(ValidateLog, PipelineGameReplaysThroughTheEngine) {
  auto backend = make_canned_backend();
  const auto log = play_pipeline_game(5, *backend);
  ASSERT_TRUE(log.complete());
  EXPECT_NO_THROW(validate_log(log));
}

TEST(ValidateLog, TamperedWinnerIsRejected) {
  auto lines = lines_of(play_rule_bot_game(2));
  auto& last = lines.back();
  ASSERT_EQ(last["kind"], "winner");
  last["data"]["side"] = last["data"]["side"] == "good" ? "evil" : "good";
  EXPECT_THROW(validate_log(from_lines(lines)), Error);
}

TEST(ValidateLog, TamperedQuestOutcomeIsRejected) {
  auto lines = lines_of(play_rule_bot_game(3));
  bool changed = false;
  for (auto& line : lines) {
    if (line["kind"] == "quest_outcome") {
      line["data"]["outcome"] = line["data"]["outcome"] == "failed" ? "succeeded" : "failed";
      changed = true;
      break;
    }
  }
  ASSERT_TRUE(changed);
  EXPECT_THROW(validate_log(from_lines(lines)), Error);
}

TEST(ValidateLog, TamperedBallotIsRejected) {
  auto lines = lines_of(play_rule_bot_game(6));
  bool changed = false;
  for (auto& line : lines) {
    if (line["kind"] != "team_vote") continue;
    int agree = 0;
    for (const auto& ballot : line["data"]["ballots"]) agree += ballot["vote"] == "agree";
    if (agree == 3) continue;
    // Flipping every ballot of an uneven vote changes the tally.
    for (auto& ballot : line["data"]["ballots"]) {
      ballot["vote"] = ballot["vote"] == "agree" ? "disagree" : "agree";
    }
    changed = true;
    break;
  }
  ASSERT_TRUE(changed);
  EXPECT_ANY_THROW(validate_log(from_lines(lines)));
}

TEST(PublicProjection, HidesOtherLanes) {
  auto backend = make_canned_backend();
  const auto log = play_pipeline_game(8, *backend);
  const auto outsider = public_projection(log);
  for (const auto& event : outsider.events()) EXPECT_FALSE(event.owner.has_value());
  for (int s = 1; s <= kPlayerCount; ++s) {
    const auto view = public_projection(log, Seat(s));
    std::size_t expected = 0;
    for (const auto& event : log.events()) {
      if (!event.owner || *event.owner == Seat(s)) ++expected;
    }
    EXPECT_EQ(view.events().size(), expected);
    for (const auto& event : view.events()) {
      if (event.owner) {
        EXPECT_EQ(*event.owner, Seat(s));
      }
    }
  }
}

TEST(PublicProjection, QuestCardsStayPrivate) {
  const auto log = play_rule_bot_game(11);
  for (const auto& event : public_projection(log).events()) {
    EXPECT_NE(event.kind, EventKind::QuestCardPlay);
    EXPECT_NE(event.kind, EventKind::PrivateAction);
  }
}

}  // namespace
}  // namespace avalon
