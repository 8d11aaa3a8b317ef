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

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "avalon/game/engine.hpp"
#include "avalon/game/rules.hpp"
#include "avalon/rng.hpp"

namespace avalon {
namespace {

std::vector<Ballot> ballots_from_mask(unsigned mask) {
  std::vector<Ballot> ballots;
  for (int s = 1; s <= kPlayerCount; ++s) {
    ballots.push_back({Seat(s), (mask >> (s - 1)) & 1U ? Vote::Agree : Vote::Disagree});
  }
  return ballots;
}

TEST(Seat, RejectsOutOfRange) {
  EXPECT_THROW(Seat(0), RuleError);
  EXPECT_THROW(Seat(7), RuleError);
  EXPECT_EQ(Seat(6).slot(), 5U);
}

TEST(Config, TeamSizesPerRound) {
  GameConfig config;
  const std::array<int, 5> expected = {2, 3, 3, 3, 3};
  for (int r = 1; r <= 5; ++r) EXPECT_EQ(config.team_size(r), expected[r - 1]);
  EXPECT_THROW(config.team_size(0), RuleError);
  EXPECT_THROW(config.team_size(6), RuleError);
  EXPECT_NO_THROW(config.validate());
  config.points_to_win = 4;
  EXPECT_THROW(config.validate(), ConfigError);
}

TEST(TallyTeamVote, AgreesWithStrictMajorityOnAll64Ballots) {
  for (unsigned mask = 0; mask < 64; ++mask) {
    const auto ballots = ballots_from_mask(mask);
    const bool pass = std::popcount(mask) > 3;
    EXPECT_EQ(tally_team_vote(ballots) == VoteResult::Pass, pass) << "mask " << mask;
  }
}

TEST(TallyTeamVote, ThreeThreeTieRejects) {
  EXPECT_EQ(tally_team_vote(ballots_from_mask(0b000111)), VoteResult::Reject);
}

TEST(TallyTeamVote, RejectsMalformedBallots) {
  auto ballots = ballots_from_mask(0b111111);
  ballots.pop_back();
  EXPECT_THROW(tally_team_vote(ballots), RuleError);
  ballots.push_back({Seat(1), Vote::Agree});
  EXPECT_THROW(tally_team_vote(ballots), RuleError);
}

TEST(ResolveQuest, AllSuccessPredicateOverEveryCardCombination) {
  for (int size : {2, 3}) {
    std::vector<Seat> team;
    for (int s = 1; s <= size; ++s) team.push_back(Seat(s));
    for (unsigned mask = 0; mask < (1U << size); ++mask) {
      std::vector<CardPlay> cards;
      for (int i = 0; i < size; ++i) {
        cards.push_back({team[static_cast<std::size_t>(i)],
                         (mask >> i) & 1U ? QuestCard::Fail : QuestCard::Success});
      }
      const QuestOutcome expected = mask == 0 ? QuestOutcome::Succeeded : QuestOutcome::Failed;
      EXPECT_EQ(resolve_quest(cards, team), expected) << "size " << size << " mask " << mask;
    }
  }
}

TEST(ResolveQuest, CardsMustMatchTeam) {
  const std::vector<Seat> team = {Seat(1), Seat(2)};
  const std::vector<CardPlay> missing = {{Seat(1), QuestCard::Success}};
  EXPECT_THROW(resolve_quest(missing, team), RuleError);
  const std::vector<CardPlay> stranger = {{Seat(1), QuestCard::Success},
                                          {Seat(3), QuestCard::Success}};
  EXPECT_THROW(resolve_quest(stranger, team), RuleError);
}

TEST(AssignRoles, AlwaysTheFixedMultiset) {
  const std::multiset<Role> expected = {Role::Merlin,       Role::Percival, Role::LoyalServant,
                                        Role::LoyalServant, Role::Morgana,  Role::Assassin};
  std::set<std::array<Role, kPlayerCount>> distinct;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto assignment = assign_roles(seed);
    const auto& roles = assignment.roles();
    EXPECT_EQ(std::multiset<Role>(roles.begin(), roles.end()), expected);
    EXPECT_EQ(assign_roles(seed), assignment);
    distinct.insert(roles);
  }
  EXPECT_GT(distinct.size(), 50U);
}

TEST(RoleAssignment, RejectsWrongMultiset) {
  EXPECT_THROW(RoleAssignment({Role::Merlin, Role::Merlin, Role::LoyalServant,
                               Role::LoyalServant, Role::Morgana, Role::Assassin}),
               RuleError);
}

TEST(RevealInfo, EntitlementsPerRole) {
  const RoleAssignment a({Role::Merlin, Role::Percival, Role::LoyalServant, Role::LoyalServant,
                          Role::Morgana, Role::Assassin});
  const auto merlin = reveal_info(a, Seat(1));
  ASSERT_TRUE(merlin.known_evil_pair);
  EXPECT_EQ(*merlin.known_evil_pair, SeatPair(Seat(5), Seat(6)));
  EXPECT_FALSE(merlin.known_partner);

  const auto percival = reveal_info(a, Seat(2));
  ASSERT_TRUE(percival.known_merlin_morgana_pair);
  EXPECT_EQ(*percival.known_merlin_morgana_pair, SeatPair(Seat(1), Seat(5)));

  const auto servant = reveal_info(a, Seat(3));
  EXPECT_FALSE(servant.known_evil_pair);
  EXPECT_FALSE(servant.known_merlin_morgana_pair);
  EXPECT_FALSE(servant.known_partner);

  const auto morgana = reveal_info(a, Seat(5));
  ASSERT_TRUE(morgana.known_partner);
  EXPECT_EQ(morgana.known_partner->first, Seat(6));
  EXPECT_EQ(morgana.known_partner->second, Role::Assassin);
  const auto assassin = reveal_info(a, Seat(6));
  ASSERT_TRUE(assassin.known_partner);
  EXPECT_EQ(assassin.known_partner->first, Seat(5));
}

TEST(Assassinate, Outcomes) {
  const RoleAssignment a({Role::Merlin, Role::Percival, Role::LoyalServant, Role::LoyalServant,
                          Role::Morgana, Role::Assassin});
  EXPECT_EQ(assassinate(a, Seat(1), AssassinationContext::MidGame), AssassinationResult::EvilWins);
  EXPECT_EQ(assassinate(a, Seat(1), AssassinationContext::FinalWindow),
            AssassinationResult::EvilWins);
  EXPECT_EQ(assassinate(a, Seat(2), AssassinationContext::MidGame), AssassinationResult::Exposed);
  EXPECT_EQ(assassinate(a, Seat(2), AssassinationContext::FinalWindow),
            AssassinationResult::GoodWins);
}

TEST(NextLeader, WrapsClockwise) {
  EXPECT_EQ(next_leader(Seat(1)), Seat(2));
  EXPECT_EQ(next_leader(Seat(6)), Seat(1));
}

// ---- engine ----

class EngineTest : public ::testing::Test {
 protected:
  RoleAssignment roles{{Role::Merlin, Role::Percival, Role::LoyalServant, Role::LoyalServant,
                        Role::Morgana, Role::Assassin}};
  GameState start() {
    return advance(GameState::initial(GameConfig{}, roles), RevealComplete{});
  }
  static std::vector<Ballot> all(Vote v) {
    std::vector<Ballot> b;
    for (Seat s : kAllSeats) b.push_back({s, v});
    return b;
  }
  static std::vector<Seat> seats(std::initializer_list<int> list) {
    std::vector<Seat> out;
    for (int s : list) out.push_back(Seat(s));
    return out;
  }
  static std::vector<CardPlay> cards(const std::vector<Seat>& team, std::set<int> fails = {}) {
    std::vector<CardPlay> out;
    for (Seat s : team) {
      out.push_back({s, fails.count(s.index()) ? QuestCard::Fail : QuestCard::Success});
    }
    return out;
  }
};

TEST_F(EngineTest, InitialState) {
  const auto state = GameState::initial(GameConfig{}, roles);
  EXPECT_EQ(state.phase, Phase::Reveal);
  EXPECT_EQ(state.round, 1);
  EXPECT_EQ(state.leader, Seat(1));
  EXPECT_EQ(state.good_points + state.evil_points, 0);
}

TEST_F(EngineTest, WrongPhaseIsTransitionError) {
  const auto initial = GameState::initial(GameConfig{}, roles);
  EXPECT_THROW(advance(initial, TeamVoteCast{all(Vote::Agree)}), TransitionError);
  const auto s = start();
  EXPECT_THROW(advance(s, QuestCardsPlayed{}), TransitionError);
  EXPECT_THROW(advance(s, AssassinMove{Seat(1)}), TransitionError);
}

TEST_F(EngineTest, ProposalChecks) {
  const auto s = start();
  EXPECT_THROW(advance(s, ProposeTeam{Seat(2), seats({1, 2})}), RuleError);
  EXPECT_THROW(advance(s, ProposeTeam{Seat(1), seats({1, 2, 3})}), RuleError);
  EXPECT_THROW(advance(s, ProposeTeam{Seat(1), seats({1, 1})}), RuleError);
  const auto next = advance(s, ProposeTeam{Seat(1), seats({1, 2})});
  EXPECT_EQ(next.phase, Phase::TeamVote);
}

TEST_F(EngineTest, RejectionRotatesLeaderAndFifthAttemptIsForced) {
  auto s = start();
  for (int attempt = 1; attempt <= 4; ++attempt) {
    EXPECT_EQ(s.proposal_attempt, attempt);
    s = advance(s, ProposeTeam{s.leader, seats({1, 2})});
    s = advance(s, TeamVoteCast{all(Vote::Disagree)});
    EXPECT_EQ(s.phase, Phase::Discussion);
  }
  EXPECT_EQ(s.leader, Seat(5));
  EXPECT_TRUE(s.proposal_is_forced());
  s = advance(s, ProposeTeam{Seat(5), seats({5, 6})});
  EXPECT_EQ(s.phase, Phase::Quest);
  EXPECT_EQ(s.team_votes_this_round, 4);
}

TEST_F(EngineTest, GoodCannotPlayFail) {
  auto s = start();
  s = advance(s, ProposeTeam{Seat(1), seats({1, 2})});
  s = advance(s, TeamVoteCast{all(Vote::Agree)});
  EXPECT_THROW(advance(s, QuestCardsPlayed{cards(seats({1, 2}), {1})}), RuleError);
}

TEST_F(EngineTest, EvilJoiningAndFailingWinsInThreeRounds) {
  auto s = start();
  const std::vector<std::vector<Seat>> teams = {seats({5, 6}), seats({1, 5, 6}), seats({2, 5, 6})};
  for (int round = 1; round <= 3; ++round) {
    const auto& team = teams[static_cast<std::size_t>(round - 1)];
    s = advance(s, ProposeTeam{s.leader, team});
    s = advance(s, TeamVoteCast{all(Vote::Agree)});
    s = advance(s, QuestCardsPlayed{cards(team, {5, 6})});
    if (s.phase == Phase::AssassinWindow) s = advance(s, AssassinMove{std::nullopt});
  }
  EXPECT_EQ(s.phase, Phase::Finished);
  EXPECT_EQ(s.winner, Side::Evil);
  EXPECT_EQ(s.win_reason, WinReason::QuestsFailed);
  EXPECT_EQ(s.round, 3);
  EXPECT_EQ(s.evil_points, 3);
}

TEST_F(EngineTest, ThreeSuccessesOpenMandatoryFinalGuess) {
  auto s = start();
  for (int round = 1; round <= 3; ++round) {
    const auto team = round == 1 ? seats({1, 2}) : seats({1, 2, 3});
    s = advance(s, ProposeTeam{s.leader, team});
    s = advance(s, TeamVoteCast{all(Vote::Agree)});
    s = advance(s, QuestCardsPlayed{cards(team)});
    ASSERT_EQ(s.phase, Phase::AssassinWindow);
    if (round < 3) {
      EXPECT_EQ(s.assassination_window(), AssassinationContext::MidGame);
      s = advance(s, AssassinMove{std::nullopt});
    }
  }
  EXPECT_EQ(s.assassination_window(), AssassinationContext::FinalWindow);
  EXPECT_THROW(advance(s, AssassinMove{std::nullopt}), RuleError);
  const auto hit = advance(s, AssassinMove{Seat(1)});
  EXPECT_EQ(hit.winner, Side::Evil);
  EXPECT_EQ(hit.win_reason, WinReason::Assassination);
  const auto miss = advance(s, AssassinMove{Seat(3)});
  EXPECT_EQ(miss.winner, Side::Good);
}

TEST_F(EngineTest, WrongMidGameGuessExposesAssassinAndSkipsLaterMidGameWindows) {
  auto s = start();
  s = advance(s, ProposeTeam{Seat(1), seats({1, 2})});
  s = advance(s, TeamVoteCast{all(Vote::Agree)});
  s = advance(s, QuestCardsPlayed{cards(seats({1, 2}))});
  s = advance(s, AssassinMove{Seat(2)});
  EXPECT_TRUE(s.assassin_exposed);
  EXPECT_EQ(s.round, 2);
  s = advance(s, ProposeTeam{s.leader, seats({1, 2, 3})});
  s = advance(s, TeamVoteCast{all(Vote::Agree)});
  s = advance(s, QuestCardsPlayed{cards(seats({1, 2, 3}))});
  EXPECT_EQ(s.phase, Phase::Discussion);
  EXPECT_EQ(s.round, 3);
}

TEST_F(EngineTest, UnanimousAgreeUsesOneAttemptPerRound) {
  auto s = start();
  SeededRng rng(3);
  while (s.phase != Phase::Finished) {
    if (s.phase == Phase::AssassinWindow) {
      s = advance(s, AssassinMove{s.assassination_window() == AssassinationContext::MidGame
                                      ? std::nullopt
                                      : std::optional<Seat>(Seat(2))});
      continue;
    }
    std::vector<Seat> team(kAllSeats.begin(), kAllSeats.end());
    rng.shuffle(team);
    team.resize(static_cast<std::size_t>(s.config.team_size(s.round)), Seat(1));
    s = advance(s, ProposeTeam{s.leader, team});
    s = advance(s, TeamVoteCast{all(Vote::Agree)});
    s = advance(s, QuestCardsPlayed{cards(team)});
  }
  for (const auto& q : s.quest_history) EXPECT_EQ(q.proposal_attempts_used, 1);
}

/// Random legal play: every game ends within five rounds with a winner that
/// matches its recorded points or assassination.
TEST_F(EngineTest, RandomLegalGamesEndSoundly) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    SeededRng rng(seed);
    const auto assignment = assign_roles(seed);
    auto s = advance(GameState::initial(GameConfig{}, assignment), RevealComplete{});
    int steps = 0;
    while (s.phase != Phase::Finished) {
      ASSERT_LT(++steps, 200);
      switch (s.phase) {
        case Phase::Discussion: {
          std::vector<Seat> team(kAllSeats.begin(), kAllSeats.end());
          rng.shuffle(team);
          team.erase(team.begin() + s.config.team_size(s.round), team.end());
          s = advance(s, ProposeTeam{s.leader, team});
          break;
        }
        case Phase::TeamVote: {
          std::vector<Ballot> ballots;
          for (Seat v : kAllSeats) ballots.push_back({v, rng.chance(1, 2) ? Vote::Agree : Vote::Disagree});
          s = advance(s, TeamVoteCast{ballots});
          break;
        }
        case Phase::Quest: {
          std::vector<CardPlay> played;
          for (Seat m : *s.current_team) {
            const bool fail = assignment.side_of(m) == Side::Evil && rng.chance(1, 2);
            played.push_back({m, fail ? QuestCard::Fail : QuestCard::Success});
          }
          s = advance(s, QuestCardsPlayed{played});
          break;
        }
        case Phase::AssassinWindow: {
          const bool final = s.assassination_window() == AssassinationContext::FinalWindow;
          std::optional<Seat> guess;
          if (final || rng.chance(1, 3)) {
            std::vector<Seat> others;
            for (Seat o : kAllSeats) {
              if (o != assignment.seat_of(Role::Assassin)) others.push_back(o);
            }
            guess = others[rng.below(others.size())];
          }
          s = advance(s, AssassinMove{guess});
          break;
        }
        default: FAIL() << "unexpected phase";
      }
    }
    EXPECT_LE(s.round, 5);
    ASSERT_TRUE(s.winner && s.win_reason);
    EXPECT_LE(s.good_points, 3);
    EXPECT_LE(s.evil_points, 3);
    EXPECT_EQ(static_cast<int>(s.quest_history.size()), s.good_points + s.evil_points);
    switch (*s.win_reason) {
      case WinReason::QuestsFailed:
        EXPECT_EQ(s.winner, Side::Evil);
        EXPECT_EQ(s.evil_points, 3);
        break;
      case WinReason::QuestsSucceeded:
        EXPECT_EQ(s.winner, Side::Good);
        EXPECT_EQ(s.good_points, 3);
        ASSERT_FALSE(s.assassinations.empty());
        EXPECT_EQ(s.assassinations.back().result, AssassinationResult::GoodWins);
        break;
      case WinReason::Assassination:
        EXPECT_EQ(s.winner, Side::Evil);
        ASSERT_FALSE(s.assassinations.empty());
        EXPECT_EQ(*s.assassinations.back().guess, assignment.seat_of(Role::Merlin));
        break;
    }
  }
}

}  // namespace
}  // namespace avalon
