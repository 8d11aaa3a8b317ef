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

#include <array>
#include <string>
#include <vector>

#include "avalon/game/engine.hpp"
#include "avalon/log/game_log.hpp"

namespace avalon::testing {

/// Builds a game log event by event for metric fixtures. Only the events
/// the metrics read are produced; the logs do not re-drive the engine.
class FixtureGame {
 public:
  FixtureGame(std::string game_id, const std::array<Role, kPlayerCount>& roles);

  /// TeamProposal plus TeamVoteBallot. `agree` holds seats 1..6.
  FixtureGame& vote(int round, int leader, const std::vector<int>& team,
                    const std::array<bool, kPlayerCount>& agree, int attempt = 1);
  FixtureGame& say(int round, int speaker, const std::string& text,
                   const std::string& context = "discussion");
  /// QuestCardPlay per member, then QuestOutcome. `fails` lists the members
  /// that play Fail.
  FixtureGame& quest(int round, const std::vector<int>& team, const std::vector<int>& fails = {});
  FixtureGame& assassin(int round, int guess, const std::string& result);
  FixtureGame& win(Side side, WinReason reason);
  FixtureGame& abort(const std::string& reason);

  const GameLog& log() const { return log_; }

 private:
  GameLog log_;
  int good_ = 0;
  int evil_ = 0;
};

/// Twenty finished games, fourteen won by Evil, plus an aborted and an
/// unfinished game.
std::vector<GameLog> winning_fixture();
/// Four finished five-quest games: Merlin on 7 of 20 executed teams, the
/// Assassin failing 5 of 8 cards. Plus one aborted game.
std::vector<GameLog> engagement_fixture();
/// Two games where Percival leads two votes with 10 of 12 ballots agreeing;
/// discussion lines for the judges.
std::vector<GameLog> leadership_fixture();

/// The three sets by name: "winning", "engagement", "leadership".
std::vector<std::pair<std::string, std::vector<GameLog>>> all_fixtures();

}  // namespace avalon::testing
