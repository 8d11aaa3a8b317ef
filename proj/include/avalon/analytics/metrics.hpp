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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "avalon/analytics/judge.hpp"
#include "avalon/log/game_log.hpp"

namespace avalon {

/// Wins of `side` over finished games. Throws UndefinedMetric when no game
/// finished.
double winning_rate(std::span<const GameLog> logs, Side side);

/// Executed-quest rounds with the role's seat on the team over all
/// executed-quest rounds of that seat. Both Loyal Servant seats count.
double quest_engagement_rate(std::span<const GameLog> logs, Role role);

/// Fail cards over cards played by the role. Throws UndefinedMetric when the
/// role played none.
double failure_vote_rate(std::span<const GameLog> logs, Role role);

/// Agree votes over all votes on the role's proposals. Throws
/// UndefinedMetric when the role never led a vote.
double leader_approval_rate(std::span<const GameLog> logs, Role role);

/// Judged utterances. classified + excluded == total.
struct Coverage {
  long total = 0;
  long classified = 0;
  long excluded = 0;

  Coverage& operator+=(const Coverage& other);
  bool operator==(const Coverage&) const = default;
};

struct LabelDistribution {
  std::map<std::string, long> counts;
  Coverage coverage;

  void add(const std::optional<JudgeVerdict>& verdict);
  /// Shares over classified utterances; empty when none was classified.
  std::map<std::string, double> shares() const;
};

struct SelfRecommendation {
  /// Rounds with a self-proposal over rounds with a judged utterance.
  std::optional<double> rate;
  /// Self-proposal rounds that ended with the seat on the executed team.
  std::optional<double> success_rate;
  long rounds = 0;
  long self_rounds = 0;
  long successes = 0;
  Coverage coverage;
};

/// Discussion utterances: the leader's proposal and the discussion turns.
bool is_discussion_response(const GameEvent& event);

SelfRecommendation self_recommendation(std::span<const GameLog> logs, Role role, Judge& judge);

std::optional<JudgeVerdict> classify_deception(const std::string& response, Seat speaker,
                                               Role role, Judge& judge);
/// The first round-1 discussion utterance of each seat holding `role`.
LabelDistribution deception_distribution(std::span<const GameLog> logs, Role role, Judge& judge);

using RolePair = std::pair<Role, Role>;
/// Keyed by (speaker role, target role) over public utterances that name
/// another seat.
std::map<RolePair, LabelDistribution> attitude_matrix(std::span<const GameLog> logs,
                                                      Judge& judge);

struct MetricsReport {
  long games_total = 0;
  long games_complete = 0;
  long games_aborted = 0;
  std::string judge_kind;
  std::map<Side, std::optional<double>> winning_rate;
  std::map<Role, std::optional<double>> quest_engagement;
  std::map<Role, std::optional<double>> failure_vote;
  std::map<Role, std::optional<double>> leader_approval;
  std::map<Role, SelfRecommendation> self_recommendation;
  std::map<Role, LabelDistribution> deception;
  std::map<RolePair, LabelDistribution> attitude;

  nlohmann::json to_json() const;
  /// Aligned plain-text tables.
  std::string to_table() const;
};

/// Every metric over the finished games in `logs`; aborted and incomplete
/// games are counted and skipped.
MetricsReport compute_metrics(std::span<const GameLog> logs, Judge& judge);

/// The finished games of `logs`.
std::vector<GameLog> finished_games(std::span<const GameLog> logs);

}  // namespace avalon
