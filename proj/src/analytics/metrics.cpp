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

#include "avalon/analytics/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "avalon/error.hpp"
#include "avalon/extraction/extractor.hpp"

namespace avalon {
namespace {

std::vector<Seat> team_of(const GameEvent& event) {
  std::vector<Seat> team;
  for (const auto& s : event.data.at("team")) team.push_back(Seat(s.get<int>()));
  return team;
}

bool on_team(const std::vector<Seat>& team, Seat seat) {
  return std::find(team.begin(), team.end(), seat) != team.end();
}

double ratio(long numerator, long denominator, const std::string& what) {
  if (denominator == 0) throw UndefinedMetric(what + " is undefined: empty denominator");
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

template <typename F>
std::optional<double> absent_if_undefined(F&& f) {
  try {
    return f();
  } catch (const UndefinedMetric&) {
    return std::nullopt;
  }
}

nlohmann::json optional_json(const std::optional<double>& value) {
  return value ? nlohmann::json(*value) : nlohmann::json(nullptr);
}

nlohmann::json coverage_json(const Coverage& c) {
  return {{"total", c.total}, {"classified", c.classified}, {"excluded", c.excluded}};
}

nlohmann::json distribution_json(const LabelDistribution& d) {
  return {{"counts", d.counts}, {"shares", d.shares()}, {"coverage", coverage_json(d.coverage)}};
}

std::string cell(const std::optional<double>& value) {
  if (!value) return "-";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3f", *value);
  return buffer;
}

}  // namespace

std::vector<GameLog> finished_games(std::span<const GameLog> logs) {
  std::vector<GameLog> out;
  for (const GameLog& log : logs) {
    if (log.complete() && !log.aborted()) out.push_back(log);
  }
  return out;
}

double winning_rate(std::span<const GameLog> logs, Side side) {
  long wins = 0;
  long games = 0;
  for (const GameLog& log : logs) {
    if (!log.complete() || log.aborted()) continue;
    ++games;
    if (log.winner() == side) ++wins;
  }
  return ratio(wins, games, "winning rate");
}

double quest_engagement_rate(std::span<const GameLog> logs, Role role) {
  long engaged = 0;
  long rounds = 0;
  for (const GameLog& log : logs) {
    if (!log.complete() || log.aborted()) continue;
    const auto seats = log.assignment().seats_of(role);
    for (const GameEvent* quest : log.of_kind(EventKind::QuestOutcome)) {
      const auto team = team_of(*quest);
      for (Seat seat : seats) {
        ++rounds;
        if (on_team(team, seat)) ++engaged;
      }
    }
  }
  return ratio(engaged, rounds, "quest engagement rate");
}

double failure_vote_rate(std::span<const GameLog> logs, Role role) {
  long fails = 0;
  long cards = 0;
  for (const GameLog& log : logs) {
    if (!log.complete() || log.aborted()) continue;
    const RoleAssignment assignment = log.assignment();
    for (const GameEvent* play : log.of_kind(EventKind::QuestCardPlay)) {
      if (assignment.role_of(Seat(play->data.at("player").get<int>())) != role) continue;
      ++cards;
      if (play->data.at("card").get<std::string>() == card_name(QuestCard::Fail)) ++fails;
    }
  }
  return ratio(fails, cards, "failure vote rate");
}

double leader_approval_rate(std::span<const GameLog> logs, Role role) {
  long agree = 0;
  long votes = 0;
  for (const GameLog& log : logs) {
    if (!log.complete() || log.aborted()) continue;
    const RoleAssignment assignment = log.assignment();
    for (const GameEvent* vote : log.of_kind(EventKind::TeamVoteBallot)) {
      if (assignment.role_of(Seat(vote->data.at("leader").get<int>())) != role) continue;
      for (const auto& ballot : vote->data.at("ballots")) {
        ++votes;
        if (ballot.at("vote").get<std::string>() == vote_name(Vote::Agree)) ++agree;
      }
    }
  }
  return ratio(agree, votes, "leader approval rate");
}

Coverage& Coverage::operator+=(const Coverage& other) {
  total += other.total;
  classified += other.classified;
  excluded += other.excluded;
  return *this;
}

void LabelDistribution::add(const std::optional<JudgeVerdict>& verdict) {
  ++coverage.total;
  if (verdict) {
    ++coverage.classified;
    ++counts[verdict->label];
  } else {
    ++coverage.excluded;
  }
}

std::map<std::string, double> LabelDistribution::shares() const {
  std::map<std::string, double> out;
  if (coverage.classified == 0) return out;
  for (const auto& [label, count] : counts) {
    out[label] = static_cast<double>(count) / static_cast<double>(coverage.classified);
  }
  return out;
}

bool is_discussion_response(const GameEvent& event) {
  if (event.kind != EventKind::PublicResponse) return false;
  const std::string context = event.data.value("context", "");
  return context == "proposal" || context == "discussion";
}

SelfRecommendation self_recommendation(std::span<const GameLog> logs, Role role, Judge& judge) {
  SelfRecommendation result;
  for (const GameLog& log : logs) {
    if (!log.complete() || log.aborted()) continue;
    const RoleAssignment assignment = log.assignment();
    std::map<int, std::vector<Seat>> executed;
    for (const GameEvent* quest : log.of_kind(EventKind::QuestOutcome)) {
      executed[quest->round] = team_of(*quest);
    }
    for (Seat seat : assignment.seats_of(role)) {
      // round -> (judged any, self-proposal seen)
      std::map<int, std::pair<bool, bool>> rounds;
      for (const GameEvent& event : log.events()) {
        if (!is_discussion_response(event)) continue;
        if (Seat(event.data.at("speaker").get<int>()) != seat) continue;
        JudgeQuery query{JudgeTask::SelfRecommendation, seat, role,
                         event.data.at("text").get<std::string>(), std::nullopt};
        const auto verdict = judge.judge(query);
        ++result.coverage.total;
        if (!verdict) {
          ++result.coverage.excluded;
          continue;
        }
        ++result.coverage.classified;
        auto& entry = rounds[event.round];
        entry.first = true;
        if (verdict->label == "self_proposal") entry.second = true;
      }
      for (const auto& [round, entry] : rounds) {
        ++result.rounds;
        if (!entry.second) continue;
        ++result.self_rounds;
        const auto it = executed.find(round);
        if (it != executed.end() && on_team(it->second, seat)) ++result.successes;
      }
    }
  }
  if (result.rounds > 0) result.rate = ratio(result.self_rounds, result.rounds, "self rate");
  if (result.self_rounds > 0) {
    result.success_rate = ratio(result.successes, result.self_rounds, "self success rate");
  }
  return result;
}

std::optional<JudgeVerdict> classify_deception(const std::string& response, Seat speaker,
                                               Role role, Judge& judge) {
  return judge.judge(JudgeQuery{JudgeTask::Deception, speaker, role, response, std::nullopt});
}

LabelDistribution deception_distribution(std::span<const GameLog> logs, Role role,
                                         Judge& judge) {
  LabelDistribution distribution;
  for (const GameLog& log : logs) {
    if (!log.complete() || log.aborted()) continue;
    for (Seat seat : log.assignment().seats_of(role)) {
      for (const GameEvent& event : log.events()) {
        if (event.round != 1 || !is_discussion_response(event)) continue;
        if (Seat(event.data.at("speaker").get<int>()) != seat) continue;
        distribution.add(
            classify_deception(event.data.at("text").get<std::string>(), seat, role, judge));
        break;
      }
    }
  }
  return distribution;
}

std::map<RolePair, LabelDistribution> attitude_matrix(std::span<const GameLog> logs,
                                                      Judge& judge) {
  std::map<RolePair, LabelDistribution> matrix;
  for (const GameLog& log : logs) {
    if (!log.complete() || log.aborted()) continue;
    const RoleAssignment assignment = log.assignment();
    for (const GameEvent* event : log.of_kind(EventKind::PublicResponse)) {
      const Seat speaker(event->data.at("speaker").get<int>());
      const std::string text = event->data.at("text").get<std::string>();
      for (Seat target : rule_extract::mentioned_seats(text)) {
        if (target == speaker) continue;
        JudgeQuery query{JudgeTask::Attitude, speaker, assignment.role_of(speaker), text, target};
        matrix[{assignment.role_of(speaker), assignment.role_of(target)}].add(judge.judge(query));
      }
    }
  }
  return matrix;
}

MetricsReport compute_metrics(std::span<const GameLog> logs, Judge& judge) {
  MetricsReport report;
  report.judge_kind = std::string(judge_kind_name(judge.kind()));
  report.games_total = static_cast<long>(logs.size());
  for (const GameLog& log : logs) {
    if (log.aborted()) {
      ++report.games_aborted;
    } else if (log.complete()) {
      ++report.games_complete;
    }
  }
  const std::vector<GameLog> finished = finished_games(logs);
  for (Side side : {Side::Good, Side::Evil}) {
    report.winning_rate[side] = absent_if_undefined([&] { return winning_rate(finished, side); });
  }
  for (Role role : kAllRoles) {
    report.quest_engagement[role] =
        absent_if_undefined([&] { return quest_engagement_rate(finished, role); });
    report.failure_vote[role] =
        side_of(role) == Side::Evil
            ? absent_if_undefined([&] { return failure_vote_rate(finished, role); })
            : std::nullopt;
    report.leader_approval[role] =
        absent_if_undefined([&] { return leader_approval_rate(finished, role); });
    report.self_recommendation[role] = self_recommendation(finished, role, judge);
    report.deception[role] = deception_distribution(finished, role, judge);
  }
  report.attitude = attitude_matrix(finished, judge);
  return report;
}

nlohmann::json MetricsReport::to_json() const {
  nlohmann::json json;
  json["games"] = {{"total", games_total}, {"complete", games_complete}, {"aborted", games_aborted}};
  json["judge"] = judge_kind;
  for (const auto& [side, rate] : winning_rate) {
    json["winning_rate"][std::string(side_name(side))] = optional_json(rate);
  }
  for (Role role : kAllRoles) {
    const std::string key(role_key(role));
    json["quest_engagement_rate"][key] = optional_json(quest_engagement.at(role));
    json["failure_vote_rate"][key] = optional_json(failure_vote.at(role));
    json["leader_approval_rate"][key] = optional_json(leader_approval.at(role));
    const SelfRecommendation& self = self_recommendation.at(role);
    json["self_recommendation"][key] = {{"rate", optional_json(self.rate)},
                                        {"success_rate", optional_json(self.success_rate)},
                                        {"rounds", self.rounds},
                                        {"self_rounds", self.self_rounds},
                                        {"successes", self.successes},
                                        {"coverage", coverage_json(self.coverage)}};
    json["deception"][key] = distribution_json(deception.at(role));
  }
  json["attitude"] = nlohmann::json::object();
  for (const auto& [pair, distribution] : attitude) {
    json["attitude"][std::string(role_key(pair.first))][std::string(role_key(pair.second))] =
        distribution_json(distribution);
  }
  return json;
}

std::string MetricsReport::to_table() const {
  std::ostringstream out;
  out << "games: " << games_total << " total, " << games_complete << " complete, "
      << games_aborted << " aborted (judge: " << judge_kind << ")\n";
  out << "winning rate: good " << cell(winning_rate.at(Side::Good)) << ", evil "
      << cell(winning_rate.at(Side::Evil)) << "\n\n";
  out << std::left << std::setw(15) << "role" << std::right << std::setw(8) << "QER"
      << std::setw(8) << "FVR" << std::setw(8) << "LAR" << std::setw(10) << "self" << std::setw(10)
      << "self-ok" << "\n";
  for (Role role : kAllRoles) {
    const SelfRecommendation& self = self_recommendation.at(role);
    out << std::left << std::setw(15) << role_name(role) << std::right << std::setw(8)
        << cell(quest_engagement.at(role)) << std::setw(8) << cell(failure_vote.at(role))
        << std::setw(8) << cell(leader_approval.at(role)) << std::setw(10) << cell(self.rate)
        << std::setw(10) << cell(self.success_rate) << "\n";
  }
  out << "\n" << std::left << std::setw(15) << "deception" << std::right;
  for (const std::string& label : judge_labels(JudgeTask::Deception)) {
    out << std::setw(17) << label;
  }
  out << std::setw(12) << "excluded\n";
  for (Role role : kAllRoles) {
    const auto shares = deception.at(role).shares();
    out << std::left << std::setw(15) << role_name(role) << std::right;
    for (const std::string& label : judge_labels(JudgeTask::Deception)) {
      const auto it = shares.find(label);
      out << std::setw(17)
          << cell(shares.empty() ? std::nullopt
                                 : std::optional<double>(it == shares.end() ? 0.0 : it->second));
    }
    out << std::setw(11) << deception.at(role).coverage.excluded << "\n";
  }
  out << "\n" << std::left << std::setw(32) << "attitude (speaker -> target)" << std::right;
  for (const std::string& label : judge_labels(JudgeTask::Attitude)) {
    out << std::setw(12) << label;
  }
  out << "\n";
  for (const auto& [pair, distribution] : attitude) {
    const auto shares = distribution.shares();
    const std::string name =
        std::string(role_name(pair.first)) + " -> " + std::string(role_name(pair.second));
    out << std::left << std::setw(32) << name << std::right;
    for (const std::string& label : judge_labels(JudgeTask::Attitude)) {
      const auto it = shares.find(label);
      out << std::setw(12)
          << cell(shares.empty() ? std::nullopt
                                 : std::optional<double>(it == shares.end() ? 0.0 : it->second));
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace avalon
