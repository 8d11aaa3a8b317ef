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

#include <cmath>

#include "avalon/analytics/judge.hpp"
#include "avalon/analytics/metrics.hpp"
#include "fixture_logs.hpp"
#include "games.hpp"
#include "oracle.hpp"

namespace avalon {
namespace {

using testing::all_fixtures;
using testing::engagement_fixture;
using testing::leadership_fixture;
using testing::Recount;
using testing::winning_fixture;

constexpr double kTol = 1e-12;

Recount recount(const std::vector<GameLog>& logs) {
  Recount r;
  for (const auto& log : logs) r.games.push_back(log.to_jsonl());
  return r;
}

/// Library value or nullopt when it reports an undefined metric.
template <typename F>
std::optional<double> guarded(F&& f) {
  try {
    return f();
  } catch (const UndefinedMetric&) {
    return std::nullopt;
  }
}

void expect_close(const std::optional<double>& got, const std::optional<double>& want,
                  const std::string& what) {
  ASSERT_EQ(got.has_value(), want.has_value()) << what;
  if (got) {
    EXPECT_NEAR(*got, *want, kTol) << what;
  }
}

TEST(Metrics, WorkedFixtureValues) {
  EXPECT_NEAR(winning_rate(winning_fixture(), Side::Evil), 14.0 / 20.0, kTol);
  EXPECT_NEAR(winning_rate(winning_fixture(), Side::Good), 6.0 / 20.0, kTol);
  EXPECT_NEAR(quest_engagement_rate(engagement_fixture(), Role::Merlin), 7.0 / 20.0, kTol);
  EXPECT_NEAR(failure_vote_rate(engagement_fixture(), Role::Assassin), 5.0 / 8.0, kTol);
  EXPECT_NEAR(leader_approval_rate(leadership_fixture(), Role::Percival), 10.0 / 12.0, kTol);
}

TEST(Metrics, MatchIndependentRecountOnEveryFixture) {
  for (const auto& [name, logs] : all_fixtures()) {
    const auto oracle = recount(logs);
    for (Side side : {Side::Good, Side::Evil}) {
      expect_close(guarded([&] { return winning_rate(logs, side); }),
                   oracle.winning_rate(std::string(side_name(side))), name + " win");
    }
    for (Role role : kAllRoles) {
      const std::string key(role_key(role));
      expect_close(guarded([&] { return quest_engagement_rate(logs, role); }),
                   oracle.quest_engagement(key), name + " qer " + key);
      expect_close(guarded([&] { return failure_vote_rate(logs, role); }),
                   oracle.failure_votes(key), name + " fvr " + key);
      expect_close(guarded([&] { return leader_approval_rate(logs, role); }),
                   oracle.leader_approval(key), name + " lar " + key);
    }
  }
}

TEST(Metrics, MatchRecountOnPlayedGames) {
  std::vector<GameLog> logs;
  for (std::uint64_t seed = 100; seed < 140; ++seed) logs.push_back(testing::play_rule_bot_game(seed));
  const auto oracle = recount(logs);
  for (Side side : {Side::Good, Side::Evil}) {
    expect_close(guarded([&] { return winning_rate(logs, side); }),
                 oracle.winning_rate(std::string(side_name(side))), "win");
  }
  for (Role role : kAllRoles) {
    const std::string key(role_key(role));
    expect_close(guarded([&] { return quest_engagement_rate(logs, role); }),
                 oracle.quest_engagement(key), "qer " + key);
    expect_close(guarded([&] { return failure_vote_rate(logs, role); }),
                 oracle.failure_votes(key), "fvr " + key);
    expect_close(guarded([&] { return leader_approval_rate(logs, role); }),
                 oracle.leader_approval(key), "lar " + key);
  }
}

TEST(Metrics, AbortedAndUnfinishedGamesAreSkipped) {
  const auto logs = winning_fixture();
  EXPECT_EQ(finished_games(logs).size(), 20U);
  RuleJudge judge;
  const auto report = compute_metrics(logs, judge);
  EXPECT_EQ(report.games_total, 22);
  EXPECT_EQ(report.games_complete, 20);
  EXPECT_EQ(report.games_aborted, 1);
  EXPECT_NEAR(*report.winning_rate.at(Side::Evil), 0.7, kTol);
}

TEST(Metrics, EmptyDenominatorsAreUndefined) {
  const auto logs = winning_fixture();
  const std::vector<GameLog> aborted_only(logs.end() - 2, logs.end());
  EXPECT_THROW(winning_rate(aborted_only, Side::Good), UndefinedMetric);
  EXPECT_THROW(failure_vote_rate(aborted_only, Role::Merlin), UndefinedMetric);
  EXPECT_THROW(leader_approval_rate(engagement_fixture(), Role::Merlin), UndefinedMetric);
  RuleJudge judge;
  const auto report = compute_metrics(aborted_only, judge);
  EXPECT_FALSE(report.winning_rate.at(Side::Evil).has_value());
  EXPECT_TRUE(report.to_json()["winning_rate"]["evil"].is_null());
}

TEST(Metrics, SharesSumToOneAndCoverageIsFull) {
  RuleJudge judge;
  const auto logs = leadership_fixture();
  const auto report = compute_metrics(logs, judge);
  auto check = [](const LabelDistribution& d, const std::string& what) {
    EXPECT_EQ(d.coverage.classified + d.coverage.excluded, d.coverage.total) << what;
    long counted = 0;
    for (const auto& [label, n] : d.counts) counted += n;
    EXPECT_EQ(counted, d.coverage.classified) << what;
    const auto shares = d.shares();
    if (d.coverage.classified == 0) {
      EXPECT_TRUE(shares.empty()) << what;
      return;
    }
    double sum = 0;
    for (const auto& [label, share] : shares) sum += share;
    EXPECT_NEAR(sum, 1.0, 1e-9) << what;
  };
  long deception_total = 0;
  for (const auto& [role, d] : report.deception) {
    check(d, "deception " + std::string(role_key(role)));
    deception_total += d.coverage.total;
  }
  EXPECT_GT(deception_total, 0);
  long attitude_total = 0;
  for (const auto& [pair, d] : report.attitude) {
    check(d, "attitude");
    attitude_total += d.coverage.total;
  }
  EXPECT_GT(attitude_total, 0);
  for (const auto& [role, s] : report.self_recommendation) {
    EXPECT_EQ(s.coverage.classified + s.coverage.excluded, s.coverage.total);
    if (s.rate) {
      EXPECT_GE(*s.rate, 0.0);
      EXPECT_LE(*s.rate, 1.0);
    }
  }
}

TEST(Metrics, DeceptionUsesFirstRoundOneUtterance) {
  RuleJudge judge;
  const auto logs = leadership_fixture();
  // Seat 3 of lead_1 is the Assassin claiming loyal servant; seat 6 of lead_2
  // is the Assassin with no claim.
  const auto d = deception_distribution(logs, Role::Assassin, judge);
  EXPECT_EQ(d.coverage.total, 2);
  EXPECT_EQ(d.counts.at("camouflage"), 1);
  EXPECT_EQ(d.counts.at("withholding"), 1);
}

TEST(Metrics, ExcludedVerdictsAreCounted) {
  /// Judges nothing.
  struct Mute final : Judge {
    std::optional<JudgeVerdict> judge(const JudgeQuery&) override { return std::nullopt; }
    JudgeKind kind() const override { return JudgeKind::Backend; }
  } mute;
  const auto d = deception_distribution(leadership_fixture(), Role::Assassin, mute);
  EXPECT_EQ(d.coverage.total, 2);
  EXPECT_EQ(d.coverage.excluded, 2);
  EXPECT_TRUE(d.shares().empty());
}

TEST(Metrics, TableMentionsEveryRole) {
  RuleJudge judge;
  const auto table = compute_metrics(leadership_fixture(), judge).to_table();
  for (Role role : kAllRoles) EXPECT_NE(table.find(std::string(role_name(role))), std::string::npos);
}

}  // namespace
}  // namespace avalon
