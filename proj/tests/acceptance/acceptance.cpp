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

// Acceptance checks. Each criterion prints one PASS/FAIL line; the exit
// status is non-zero when any selected criterion fails.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "avalon/analytics/judge.hpp"
#include "avalon/analytics/metrics.hpp"
#include "avalon/backend/exchange_log.hpp"
#include "avalon/experience/experience.hpp"
#include "avalon/extraction/extractor.hpp"
#include "avalon/memory/memory.hpp"
#include "avalon/orchestrator/canned.hpp"
#include "avalon/orchestrator/host.hpp"
#include "avalon/orchestrator/series.hpp"
#include "fixture_logs.hpp"
#include "games.hpp"
#include "oracle.hpp"

namespace avalon {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

/// Collects failed expectations for one criterion.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  long count() const { return count_; }
  std::string failures() const {
    std::string out;
    for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + f;
    if (failed_ > static_cast<long>(failures_.size())) {
      out += "; ... " + std::to_string(failed_) + " failures in total";
    }
    return out;
  }

 private:
  long count_ = 0;
  long failed_ = 0;
  std::vector<std::string> failures_;
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome finish(const Checks& checks, const std::string& detail) {
  if (checks.ok()) return {true, detail + " (" + std::to_string(checks.count()) + " checks)"};
  return {false, checks.failures()};
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixed(double value, int digits = 3) {
  std::ostringstream out;
  out.precision(digits);
  out << std::fixed << value;
  return out.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "avalon_acceptance" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// ---- 1. rules oracle ----

Outcome rules_oracle() {
  Checks checks;
  const auto start = Clock::now();
  for (unsigned mask = 0; mask < 64; ++mask) {
    std::vector<Ballot> ballots;
    for (int i = 0; i < kPlayerCount; ++i) {
      ballots.push_back({Seat(i + 1), (mask >> i) & 1U ? Vote::Agree : Vote::Disagree});
    }
    const bool pass = tally_team_vote(ballots) == VoteResult::Pass;
    checks.expect(pass == (std::popcount(mask) > 3), "ballot mask " + std::to_string(mask));
  }
  for (int size : {2, 3}) {
    std::vector<Seat> team;
    for (int i = 0; i < size; ++i) team.push_back(Seat(i + 1));
    for (unsigned mask = 0; mask < (1U << size); ++mask) {
      std::vector<CardPlay> cards;
      for (int i = 0; i < size; ++i) {
        cards.push_back({team[i], (mask >> i) & 1U ? QuestCard::Fail : QuestCard::Success});
      }
      const bool succeeded = resolve_quest(cards, team) == QuestOutcome::Succeeded;
      checks.expect(succeeded == (mask == 0),
                    "team size " + std::to_string(size) + " cards " + std::to_string(mask));
    }
  }
  const double elapsed = seconds_since(start);
  checks.expect(elapsed < 1.0, "runtime " + fixed(elapsed) + " s");
  return finish(checks, "64 ballots and 12 card combinations in " + fixed(elapsed, 4) + " s");
}

// ---- 2. end-game soundness ----

Outcome end_game_soundness() {
  Checks checks;
  const auto start = Clock::now();
  std::map<std::string, int> reasons;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const std::string tag = "seed " + std::to_string(seed);
    const GameLog log = testing::play_rule_bot_game(seed);
    checks.expect(log.complete(), tag + " did not finish");
    if (!log.complete()) continue;
    std::optional<GameState> validated;
    try {
      validated = validate_log(log);
    } catch (const std::exception& e) {
      checks.expect(false, tag + ": " + e.what());
      continue;
    }
    const GameState& state = *validated;
    checks.expect(state.phase == Phase::Finished && state.winner == log.winner(),
                  tag + " winner disagrees with the engine");
    checks.expect(state.quest_history.size() <= kRounds, tag + " ran past five rounds");
    const Seat merlin = state.assignment.seat_of(Role::Merlin);
    const bool merlin_named = std::any_of(
        state.assassinations.begin(), state.assassinations.end(),
        [&](const AssassinationRecord& a) { return a.guess == merlin; });
    const std::string reason = log.events().back().data.at("reason").get<std::string>();
    ++reasons[reason];
    if (reason == "quests_failed") {
      checks.expect(state.winner == Side::Evil && state.evil_points == 3 && state.good_points < 3,
                    tag + " three-fail path");
      checks.expect(!merlin_named, tag + " Merlin named before the quests failed");
    } else if (reason == "quests_succeeded") {
      checks.expect(state.winner == Side::Good && state.good_points == 3 && !merlin_named,
                    tag + " three-success path");
      const bool final_taken =
          !state.assassinations.empty() &&
          state.assassinations.back().context == AssassinationContext::FinalWindow;
      checks.expect(final_taken, tag + " good win without the final guess");
    } else if (reason == "assassination") {
      checks.expect(state.winner == Side::Evil && merlin_named, tag + " assassination path");
      checks.expect(state.evil_points < 3, tag + " assassination after three fails");
    } else {
      checks.expect(false, tag + " unknown reason " + reason);
    }
  }
  const double elapsed = seconds_since(start);
  checks.expect(elapsed < 30.0, "runtime " + fixed(elapsed) + " s");
  std::string mix;
  for (const auto& [reason, n] : reasons) mix += (mix.empty() ? "" : ", ") + reason + "=" + std::to_string(n);
  return finish(checks, "1000 games in " + fixed(elapsed) + " s [" + mix + "]");
}

// ---- 3. determinism and replay ----

Outcome determinism_replay() {
  Checks checks;
  RunConfig config;
  config.series.num_games = 1;
  config.series.seed = 2026;
  config.series.opponents = OpponentKind::Pipeline;
  const auto dir_a = scratch("replay_a");
  const auto dir_b = scratch("replay_b");
  run_series(config, default_backend_factory(config), dir_a);
  run_series(config, default_backend_factory(config), dir_b);

  const auto read = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const fs::path game = dir_a / "games" / "game_001.jsonl";
  const fs::path exchanges = dir_a / "exchanges" / "game_001.jsonl";
  checks.expect(read(game) == read(dir_b / "games" / "game_001.jsonl"),
                "two recordings of the same seed differ");

  const GameLog recorded = GameLog::read(game);
  std::size_t exchange_count = 0;
  try {
    const GameLog replayed = replay_game(recorded, exchanges, PromptLibrary::defaults());
    checks.expect(replayed.to_jsonl() == read(game), "replayed log is not byte-identical");
  } catch (const std::exception& e) {
    checks.expect(false, std::string("replay failed: ") + e.what());
  }

  std::vector<std::string> lines;
  {
    std::ifstream in(exchanges);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }
  exchange_count = lines.size();
  checks.expect(exchange_count > 10, "too few exchanges recorded");
  for (std::size_t k : {std::size_t{0}, exchange_count / 3, exchange_count / 2, exchange_count - 1}) {
    if (k >= exchange_count) continue;
    auto altered = lines;
    auto json = nlohmann::json::parse(altered[k]);
    std::string digest = json.at("digest").get<std::string>();
    digest[0] = digest[0] == '0' ? '1' : '0';
    json["digest"] = digest;
    altered[k] = json.dump();
    const fs::path path = dir_a / "altered.jsonl";
    {
      std::ofstream out(path, std::ios::trunc);
      for (const auto& l : altered) out << l << '\n';
    }
    try {
      replay_game(recorded, path, PromptLibrary::defaults());
      checks.expect(false, "altered digest at exchange " + std::to_string(k) + " replayed");
    } catch (const ReplayMismatch& e) {
      checks.expect(e.turn() == k, "altered exchange " + std::to_string(k) + " reported at " +
                                       std::to_string(e.turn()));
    }
  }
  return finish(checks, std::to_string(recorded.events().size()) + " events, " +
                            std::to_string(exchange_count) + " exchanges");
}

// ---- 4. memory privacy ----

Outcome memory_privacy() {
  Checks checks;
  SeededRng rng(424242);
  std::vector<MemoryStore> stores;
  // What each store should hold: (summary, accepted objects of this round).
  std::vector<std::pair<std::string, std::vector<MemoryObject>>> model(kPlayerCount);
  for (Seat s : kAllSeats) stores.emplace_back(s);
  long operations = 0, rolls = 0, rejected = 0;
  for (int i = 0; i < 12000; ++i) {
    const std::size_t slot = rng.below(kPlayerCount);
    MemoryStore& store = stores[slot];
    auto& [summary, objects] = model[slot];
    const std::uint64_t op = rng.below(10);
    ++operations;
    if (op < 6) {
      const Seat owner(static_cast<int>(rng.below(kPlayerCount)) + 1);
      const bool is_private = rng.chance(1, 2);
      MemoryObject object{is_private ? std::nullopt : std::optional<Seat>(owner),
                          "#" + std::to_string(i) + (is_private ? " private" : " public"), 1,
                          is_private ? Visibility::Private(owner) : Visibility::Public()};
      try {
        store.record(object);
        checks.expect(!is_private || owner == store.owner(), "foreign private object accepted");
        objects.push_back(object);
      } catch (const VisibilityViolation&) {
        checks.expect(is_private && owner != store.owner(), "legal object rejected");
        ++rejected;
      }
    } else if (op < 9) {
      const MemoryView view = store.visible_view();
      for (const auto& object : view.objects) {
        checks.expect(object.visibility.visible_to(store.owner()), "foreign private object exposed");
      }
      checks.expect(view.objects == objects && view.rolled_summary == summary,
                    "view differs from the model");
      const std::string input = store.summarizer_input();
      for (std::size_t other = 0; other < stores.size(); ++other) {
        if (other == slot) continue;
        for (const auto& object : model[other].second) {
          if (!object.visibility.is_public()) {
            checks.expect(input.find(object.content + "\"") == std::string::npos,
                          "summarizer input leaks another seat's private object");
          }
        }
      }
    } else {
      const std::string output = "summary " + std::to_string(i);
      store.roll_round([&](const std::string&) { return output; });
      ++rolls;
      summary = output;
      objects.clear();
      checks.expect(store.rolled_summary() == output && store.current_objects().empty(),
                    "roll did not leave (summary, empty)");
    }
  }
  // A failing summarizer leaves the store as it was.
  MemoryStore probe(Seat(1));
  probe.record({Seat(2), "kept", 1, Visibility::Public()});
  try {
    probe.roll_round([](const std::string&) -> std::string { throw std::runtime_error("down"); });
    checks.expect(false, "failing summarizer did not throw");
  } catch (const SummarizerError&) {
  }
  checks.expect(probe.current_objects().size() == 1 && probe.rolled_summary().empty(),
                "failed roll changed the store");
  checks.expect(operations >= 10000, "fewer than 10000 operations");
  return finish(checks, std::to_string(operations) + " operations, " + std::to_string(rolls) +
                            " rolls, " + std::to_string(rejected) + " foreign objects refused");
}

// ---- 5. call accounting ----

struct TurnKey {
  int seat;
  int turn;
  bool operator<(const TurnKey& o) const { return std::tie(seat, turn) < std::tie(o.seat, o.turn); }
};

const std::vector<Stage> kTurnStages = {Stage::Analysis, Stage::Planning, Stage::Action,
                                        Stage::Response};

/// Checks one traced pipeline game against the expected per-turn stages.
void check_game_calls(Checks& checks, const std::string& label, const GameLog& log,
                      const std::vector<CompletionRequest>& requests,
                      const std::vector<Stage>& expected) {
  checks.expect(log.complete(), label + " game did not finish");
  std::map<TurnKey, std::vector<Stage>> per_turn;
  std::map<std::pair<int, int>, int> agent_per_round;
  std::map<std::pair<int, int>, int> summaries;
  for (const auto& r : requests) {
    if (!r.tag.seat) {
      checks.expect(false, label + ": untagged request");
      continue;
    }
    if (r.purpose == Purpose::Agent) {
      per_turn[{r.tag.seat->index(), r.tag.turn}].push_back(r.tag.stage);
      ++agent_per_round[{r.tag.seat->index(), r.tag.round}];
    } else if (r.purpose == Purpose::Summarizer && r.tag.stage == Stage::Summarize) {
      ++summaries[{r.tag.seat->index(), r.tag.round}];
    }
  }
  std::map<std::pair<int, int>, int> turns_per_round;
  for (const auto* event : log.of_kind(EventKind::PrivateAction)) {
    ++turns_per_round[{event->owner->index(), event->round}];
  }
  long turns = 0;
  for (const auto& [key, stages] : per_turn) {
    ++turns;
    checks.expect(stages == expected, label + ": seat " + std::to_string(key.seat) + " turn " +
                                          std::to_string(key.turn) + " made " +
                                          std::to_string(stages.size()) + " calls");
  }
  checks.expect(turns == static_cast<long>(log.of_kind(EventKind::PrivateAction).size()),
                label + ": turns with calls differ from recorded turns");
  for (const auto& [key, n] : turns_per_round) {
    checks.expect(agent_per_round[key] == static_cast<int>(expected.size()) * n,
                  label + ": seat " + std::to_string(key.first) + " round " +
                      std::to_string(key.second) + " agent calls");
  }
  const int rounds = log.events().back().round;
  for (int seat = 1; seat <= kPlayerCount; ++seat) {
    for (int round = 1; round <= rounds; ++round) {
      checks.expect(summaries[{seat, round}] == 1, label + ": seat " + std::to_string(seat) +
                                                       " round " + std::to_string(round) +
                                                       " summarizer calls");
    }
  }
}

/// Canned backend that counts learning-stage calls into shared totals.
class StageCounter final : public Backend {
 public:
  explicit StageCounter(std::map<Stage, std::atomic<long>>* counts)
      : inner_(make_canned_backend()), counts_(counts) {}
  std::string complete(const CompletionRequest& request) override {
    ++(*counts_)[request.tag.stage];
    return inner_->complete(request);
  }
  BackendKind kind() const override { return BackendKind::Scripted; }

 private:
  std::unique_ptr<ScriptedBackend> inner_;
  std::map<Stage, std::atomic<long>>* counts_;
};

Outcome call_accounting() {
  Checks checks;
  struct Variant {
    std::string label;
    PipelineSettings settings;
    std::vector<Stage> stages;
  };
  std::vector<Variant> variants;
  variants.push_back({"full", {}, kTurnStages});
  PipelineSettings am;
  am.analysis_enabled = false;
  variants.push_back({"AM", am, {Stage::Planning, Stage::Action, Stage::Response}});
  PipelineSettings plan;
  plan.planning_enabled = false;
  variants.push_back({"Plan", plan, {Stage::Analysis, Stage::Action, Stage::Response}});
  PipelineSettings action;
  action.action_enabled = false;
  variants.push_back({"Action", action, {Stage::Analysis, Stage::Planning, Stage::Response}});
  PipelineSettings mates;
  mates.analysis_scope = AnalysisScope::TeammatesOnly;
  variants.push_back({"AnalysisTeammatesOnly", mates, kTurnStages});
  PipelineSettings rivals;
  rivals.analysis_scope = AnalysisScope::AdversariesOnly;
  variants.push_back({"AnalysisAdversariesOnly", rivals, kTurnStages});

  long games = 0;
  for (const auto& v : variants) {
    for (std::uint64_t seed : {3ULL, 14ULL}) {
      auto canned = make_canned_backend();
      testing::TracingBackend trace(*canned);
      const GameLog log = testing::play_pipeline_game(seed, trace, v.settings);
      check_game_calls(checks, v.label + " seed " + std::to_string(seed), log, trace.requests(),
                       v.stages);
      ++games;
    }
  }

  // Learning ablations: IS drops the strategy rewrite, AO the other-role summary.
  std::map<std::string, std::map<Stage, long>> learning;
  for (const std::string label : {"learning", "IS", "AO"}) {
    RunConfig config;
    config.series.num_games = 2;
    config.series.learning_enabled = true;
    config.series.seed = 9;
    if (label == "IS") config.series.ablations = {Ablation::IS};
    if (label == "AO") config.series.ablations = {Ablation::AO};
    std::map<Stage, std::atomic<long>> counts;
    run_series(config, [&](int) { return std::make_unique<StageCounter>(&counts); });
    for (Stage s : {Stage::Suggest, Stage::ImproveStrategy, Stage::OtherStrategies,
                    Stage::Analysis, Stage::Planning, Stage::Action}) {
      learning[label][s] = counts[s].load();
    }
  }
  const auto& full = learning["learning"];
  checks.expect(full.at(Stage::Suggest) > 0 && full.at(Stage::ImproveStrategy) > 0 &&
                    full.at(Stage::OtherStrategies) > 0,
                "learning series made no learning calls");
  for (const std::string label : {"IS", "AO"}) {
    const Stage removed = label == "IS" ? Stage::ImproveStrategy : Stage::OtherStrategies;
    for (const auto& [stage, n] : learning[label]) {
      const long want = stage == removed ? 0 : full.at(stage);
      checks.expect(n == want, label + " changed the count of stage " +
                                   std::string(stage_name(stage)));
    }
  }
  return finish(checks, std::to_string(games) +
                            " traced games over 6 pipeline variants plus IS/AO learning series");
}

// ---- 6. extraction fallbacks ----

std::vector<Seat> fill_by_hand(std::vector<Seat> chosen, const std::vector<Seat>& candidates,
                               int count, std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<Seat> pool;
  for (Seat s : candidates) {
    if (std::find(chosen.begin(), chosen.end(), s) == chosen.end()) pool.push_back(s);
  }
  while (static_cast<int>(chosen.size()) < count) {
    const auto i = rng.below(pool.size());
    chosen.push_back(pool[i]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return chosen;
}

Outcome extraction_fallbacks() {
  Checks checks;
  const std::vector<Seat> all(kAllSeats.begin(), kAllSeats.end());
  auto rules = ActionExtractor::rules_only();
  ScriptedBackend unclear([](const CompletionRequest& r) -> std::string {
    const auto& text = r.messages.back().content;
    return text.find("quest") != std::string::npos ? "quest: unclear" : "vote: unclear";
  });
  ActionExtractor backed(&unclear, PromptLibrary::defaults(), default_demonstrations());

  for (const char* text : {"Hmm, hard to say.", "Let me think about it.", ""}) {
    checks.expect(rules.extract_team_vote(text) == Vote::Agree, "unclear vote (rules)");
    checks.expect(backed.extract_team_vote(text) == Vote::Agree, "unclear vote (backend)");
    checks.expect(rules.extract_quest_card(text) == QuestCard::Fail, "unclear card (rules)");
    checks.expect(backed.extract_quest_card(text) == QuestCard::Fail, "unclear card (backend)");
  }

  SeededRng rng(1);
  checks.expect(rules.extract_players("Player 5, Player 2 and Player 6 should go.",
                                      ExtractionContext::player_choice(2, all), {}, rng) ==
                    std::vector<Seat>{Seat(5), Seat(2)},
                "over-selection of 3 for 2");
  checks.expect(rules.extract_players("seat 6, seat 1, seat 4, seat 3",
                                      ExtractionContext::player_choice(3, all), {}, rng) ==
                    std::vector<Seat>{Seat(6), Seat(1), Seat(4)},
                "over-selection of 4 for 3");

  auto ctx = ExtractionContext::player_choice(3, all);
  ctx.retry_budget = 2;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    int reasks = 0;
    SeededRng seeded(seed);
    const auto chosen = rules.extract_players(
        "I pick nobody yet.", ctx,
        [&](int) {
          ++reasks;
          return std::string("Still thinking.");
        },
        seeded);
    checks.expect(reasks == 2, "re-ask count");
    checks.expect(chosen == fill_by_hand({}, all, 3, seed), "fill seed " + std::to_string(seed));
    std::set<Seat> unique(chosen.begin(), chosen.end());
    checks.expect(unique.size() == 3, "fill repeats a seat");
  }
  return finish(checks, "four heuristics");
}

// ---- 7. metrics oracle ----

Outcome metrics_oracle() {
  Checks checks;
  constexpr double kTol = 1e-12;
  auto guarded = [](auto f) -> std::optional<double> {
    try {
      return f();
    } catch (const UndefinedMetric&) {
      return std::nullopt;
    }
  };
  auto close = [&](std::optional<double> got, std::optional<double> want, const std::string& what) {
    checks.expect(got.has_value() == want.has_value() && (!got || std::abs(*got - *want) <= kTol),
                  what);
  };
  long compared = 0;
  for (const auto& [name, logs] : testing::all_fixtures()) {
    testing::Recount oracle;
    for (const auto& log : logs) oracle.games.push_back(log.to_jsonl());
    for (Side side : {Side::Good, Side::Evil}) {
      close(guarded([&] { return winning_rate(logs, side); }),
            oracle.winning_rate(std::string(side_name(side))), name + " WR");
      ++compared;
    }
    for (Role role : kAllRoles) {
      const std::string key(role_key(role));
      close(guarded([&] { return quest_engagement_rate(logs, role); }),
            oracle.quest_engagement(key), name + " QER " + key);
      close(guarded([&] { return failure_vote_rate(logs, role); }), oracle.failure_votes(key),
            name + " FVR " + key);
      close(guarded([&] { return leader_approval_rate(logs, role); }),
            oracle.leader_approval(key), name + " LAR " + key);
      compared += 3;
    }
  }
  close(winning_rate(testing::winning_fixture(), Side::Evil), 14.0 / 20.0, "WR 14/20");
  close(quest_engagement_rate(testing::engagement_fixture(), Role::Merlin), 7.0 / 20.0, "QER 7/20");
  close(failure_vote_rate(testing::engagement_fixture(), Role::Assassin), 5.0 / 8.0, "FVR 5/8");
  close(leader_approval_rate(testing::leadership_fixture(), Role::Percival), 10.0 / 12.0,
        "LAR 10/12");
  return finish(checks, std::to_string(compared) + " metric values on 3 fixture sets, WR=0.70 QER=0.35 FVR=0.625");
}

// ---- 8. learning hygiene ----

Outcome learning_hygiene() {
  Checks checks;
  RunConfig config;
  config.series.num_games = 3;
  config.series.learning_enabled = true;
  config.series.seed = 31;
  config.series.opponents = OpponentKind::Pipeline;
  const auto dir = scratch("learning");
  const SeriesResult result = run_series(config, default_backend_factory(config), dir);
  checks.expect(result.store.version() == 3, "version " + std::to_string(result.store.version()));
  const fs::path stored = dir / "strategy_store_v3.json";
  checks.expect(fs::exists(stored), "strategy_store_v3.json missing");
  long sets = 0;
  for (const auto& store : {result.store, StrategyStore::load(stored)}) {
    checks.expect(store.version() == 3, "stored version");
    for (const auto& [role, exp] : store.roles()) {
      const std::string key(role_key(role));
      if (!exp.suggestions.empty()) {
        ++sets;
        checks.expect(exp.suggestions.suggestions.size() == 3, key + " suggestion count");
        for (const auto& s : exp.suggestions.suggestions) {
          checks.expect(!contains_seat_name(s), key + " suggestion names a seat: " + s);
        }
      }
      checks.expect(!contains_seat_name(exp.strategy), key + " strategy names a seat");
      checks.expect(!contains_seat_name(exp.others.text), key + " other strategies name a seat");
    }
  }
  // The raw file as well, for any text the store types do not surface.
  std::ifstream in(stored);
  std::stringstream raw;
  raw << in.rdbuf();
  checks.expect(!contains_seat_name(raw.str()), "stored file names a seat");
  checks.expect(sets > 0, "no suggestion set was stored");
  return finish(checks, "version 3, " + std::to_string(sets / 2) + " stored suggestion sets");
}

// ---- 9. judge pluggability ----

Outcome judge_pluggability() {
  Checks checks;
  auto canned = make_canned_backend();
  BackendJudge backend_judge(*canned, PromptLibrary::defaults());
  RuleJudge rule_judge;
  long distributions = 0;
  long classified[2] = {0, 0};
  for (const auto& [name, logs] : testing::all_fixtures()) {
    std::map<std::string, long> totals[2];
    int index = 0;
    for (Judge* judge : std::initializer_list<Judge*>{&rule_judge, &backend_judge}) {
      const std::string tag = name + "/" + std::string(judge_kind_name(judge->kind()));
      MetricsReport report;
      try {
        report = compute_metrics(logs, *judge);
      } catch (const std::exception& e) {
        checks.expect(false, tag + ": " + e.what());
        continue;
      }
      checks.expect(report.judge_kind == judge_kind_name(judge->kind()), tag + " judge kind");
      auto check = [&](const LabelDistribution& d, const std::string& what) {
        ++distributions;
        const auto& c = d.coverage;
        checks.expect(c.classified + c.excluded == c.total, tag + " " + what + " coverage");
        long counted = 0;
        for (const auto& [label, n] : d.counts) counted += n;
        checks.expect(counted == c.classified, tag + " " + what + " counts");
        if (c.classified > 0) {
          double sum = 0;
          for (const auto& [label, share] : d.shares()) sum += share;
          checks.expect(std::abs(sum - 1.0) <= 1e-9, tag + " " + what + " sums to " + fixed(sum, 12));
        }
        totals[index][what] = c.total;
        classified[index] += c.classified;
      };
      for (const auto& [role, d] : report.deception) check(d, "deception " + std::string(role_key(role)));
      for (const auto& [pair, d] : report.attitude) {
        check(d, "attitude " + std::string(role_key(pair.first)) + "->" +
                     std::string(role_key(pair.second)));
      }
      for (const auto& [role, s] : report.self_recommendation) {
        checks.expect(s.coverage.classified + s.coverage.excluded == s.coverage.total,
                      tag + " self recommendation coverage");
        totals[index]["self " + std::string(role_key(role))] = s.coverage.total;
      }
      ++index;
    }
    // Both judges see the same utterances.
    checks.expect(totals[0] == totals[1], name + " utterance totals differ between judges");
  }
  checks.expect(classified[0] > 0 && classified[1] > 0, "a judge classified nothing");
  return finish(checks, std::to_string(distributions) + " distributions, " +
                            std::to_string(classified[0]) + " rule and " +
                            std::to_string(classified[1]) + " backend verdicts");
}

struct Criterion {
  std::string name;
  std::string title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {"rules_oracle", "rules-engine oracle", rules_oracle},
      {"end_game_soundness", "end-game soundness", end_game_soundness},
      {"determinism_replay", "determinism and replay", determinism_replay},
      {"memory_privacy", "memory privacy", memory_privacy},
      {"call_accounting", "pipeline call accounting", call_accounting},
      {"extraction_fallbacks", "extraction fallback conformance", extraction_fallbacks},
      {"metrics_oracle", "metrics oracle", metrics_oracle},
      {"learning_hygiene", "experience-learning hygiene", learning_hygiene},
      {"judge_pluggability", "judge pluggability", judge_pluggability},
  };
  return list;
}

}  // namespace
}  // namespace avalon

int main(int argc, char** argv) {
  using avalon::criteria;
  CLI::App app{"Acceptance checks"};
  std::vector<std::string> selected;
  bool list = false;
  app.add_option("criteria", selected, "Criteria to run (default: all)");
  app.add_flag("--list", list, "Print the criterion names");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& c : criteria()) std::cout << c.name << "\n";
    return 0;
  }
  for (const auto& name : selected) {
    const bool known = std::any_of(criteria().begin(), criteria().end(),
                                   [&](const auto& c) { return c.name == name; });
    if (!known) {
      std::cerr << "unknown criterion " << name << "\n";
      return 2;
    }
  }
  int failed = 0;
  for (const auto& c : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.name) == selected.end()) {
      continue;
    }
    avalon::Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failed;
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << c.name << " - " << c.title << ": "
              << outcome.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
