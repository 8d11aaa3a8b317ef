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

#include "avalon/orchestrator/host.hpp"

#include <algorithm>
#include <utility>

#include "avalon/backend/exchange_log.hpp"
#include "avalon/error.hpp"

namespace avalon {
namespace {

nlohmann::json seats_json(const std::vector<Seat>& seats) {
  auto out = nlohmann::json::array();
  for (Seat s : seats) out.push_back(s.index());
  return out;
}

nlohmann::json optional_seat(const std::optional<Seat>& seat) {
  return seat ? nlohmann::json(seat->index()) : nlohmann::json(nullptr);
}

std::vector<Seat> clockwise_from(Seat first) {
  std::vector<Seat> order;
  Seat s = first;
  for (int i = 0; i < kPlayerCount; ++i) {
    order.push_back(s);
    s = next_leader(s);
  }
  return order;
}

/// Runs the host loop for one game.
class Host {
 public:
  Host(const GameSetup& setup, Controllers& controllers, const PromptLibrary& prompts)
      : setup_(setup),
        controllers_(controllers),
        prompts_(prompts),
        state_(GameState::initial(setup.config, setup.assignment)),
        extraction_rng_(derive_seed(setup.seed, "extraction")),
        host_rng_(derive_seed(setup.seed, "host")) {
    for (std::size_t i = 0; i < controllers_.size(); ++i) {
      if (!controllers_[i] || controllers_[i]->seat().slot() != i) {
        throw ConfigError("controllers must fill seats 1-6 in order");
      }
    }
  }

  GameLog run(RunOptions options) {
    log_start();
    try {
      reveal();
      while (state_.phase != Phase::Finished) play_round();
    } catch (const BackendError& e) {
      if (e.retryable() || options.rethrow_fatal) throw;
      nlohmann::json data{{"turn", turn_}, {"reason", e.what()}};
      if (const auto* mismatch = dynamic_cast<const ReplayMismatch*>(&e)) {
        data["exchange"] = mismatch->turn();
      }
      log_.append(EventKind::GameAborted, state_.round, std::nullopt, std::move(data));
    }
    return std::move(log_);
  }

 private:
  SeatController& at(Seat seat) { return *controllers_[seat.slot()]; }

  void log_start() {
    nlohmann::json seats = nlohmann::json::array();
    for (const auto& controller : controllers_) seats.push_back(controller->describe());
    nlohmann::json data = setup_.extra;
    data["game_id"] = setup_.game_id;
    data["seed"] = setup_.seed;
    data["config"] = config_to_json(setup_.config);
    data["roles"] = assignment_to_json(setup_.assignment);
    data["strategy_version"] = setup_.strategy_version;
    data["seats"] = std::move(seats);
    log_.append(EventKind::GameStart, 0, std::nullopt, std::move(data));
  }

  void announce(const std::string& text, std::optional<Seat> owner = std::nullopt,
                std::optional<Expected> expected = std::nullopt) {
    const MemoryObject object{std::nullopt, text, state_.round,
                              owner ? Visibility::Private(*owner) : Visibility::Public()};
    for (Seat seat : kAllSeats) {
      if (object.visibility.visible_to(seat)) at(seat).observe(object);
    }
    log_.append(EventKind::HostInstruction, state_.round, owner,
                {{"text", text},
                 {"expected", expected ? nlohmann::json(expected_name(*expected))
                                       : nlohmann::json(nullptr)}});
  }

  void say(Seat speaker, const TurnRecord& record, const std::string& context, bool is_public) {
    const MemoryObject object{speaker, record.response, state_.round,
                              is_public ? Visibility::Public() : Visibility::Private(speaker)};
    for (Seat seat : kAllSeats) {
      if (object.visibility.visible_to(seat)) at(seat).observe(object);
    }
    log_.append(is_public ? EventKind::PublicResponse : EventKind::PrivateResponse, state_.round,
                is_public ? std::nullopt : std::optional<Seat>(speaker),
                {{"speaker", speaker.index()},
                 {"text", record.response},
                 {"context", context},
                 {"turn", record.turn}});
  }

  TurnRecord turn(Seat seat, const std::string& text, const ExtractionContext& ctx) {
    TurnInfo info{state_.round,       turn_++,           state_.leader, state_.proposal_attempt,
                  state_.current_team, state_.good_points, state_.evil_points};
    const HostInstruction instruction{text, ctx.expected, state_.round};
    TurnRecord record = at(seat).take_turn(instruction, ctx, info, extraction_rng_);
    log_.append(EventKind::PrivateAction, state_.round, seat,
                {{"turn", info.turn},
                 {"expected", expected_name(ctx.expected)},
                 {"action", action_to_json(record.action)},
                 {"action_text", record.action_text},
                 {"analysis", record.analysis.content},
                 {"plan", record.plan.content},
                 {"degraded", record.degraded},
                 {"failure", record.failure}});
    return record;
  }

  std::string render(std::string_view key, const TemplateValues& values) {
    return prompts_.render(key, values);
  }

  void reveal() {
    announce(prompts_.get("host_reveal_public"));
    for (Seat seat : kAllSeats) {
      const Role role = setup_.assignment.role_of(seat);
      const RevealView view = reveal_info(setup_.assignment, seat);
      std::string text;
      if (view.known_evil_pair) {
        text = render("host_reveal_merlin",
                      {{"Pair", seat_list({view.known_evil_pair->first,
                                           view.known_evil_pair->second})}});
      } else if (view.known_merlin_morgana_pair) {
        text = render("host_reveal_percival",
                      {{"Pair", seat_list({view.known_merlin_morgana_pair->first,
                                           view.known_merlin_morgana_pair->second})}});
      } else if (view.known_partner) {
        text = render("host_reveal_evil",
                      {{"Role", std::string(role_name(role))},
                       {"Partner", player_name(view.known_partner->first)},
                       {"Partner Role", std::string(role_name(view.known_partner->second))}});
      } else {
        text = prompts_.get("host_reveal_servant");
      }
      announce(text, seat);
    }
    state_ = advance(state_, RevealComplete{});
  }

  std::vector<Seat> settle_team(const Action& action, int count) {
    std::vector<Seat> chosen;
    if (const auto* choose = std::get_if<ChoosePlayers>(&action)) {
      for (Seat s : choose->seats) {
        if (std::find(chosen.begin(), chosen.end(), s) == chosen.end()) chosen.push_back(s);
      }
    }
    if (static_cast<int>(chosen.size()) > count) chosen.erase(chosen.begin() + count, chosen.end());
    const std::vector<Seat> all(kAllSeats.begin(), kAllSeats.end());
    return random_fill(std::move(chosen), all, count, host_rng_);
  }

  void play_round() {
    const int round = state_.round;
    const int count = state_.config.team_size(round);
    announce(render("host_round_start", {{"Round", std::to_string(round)},
                                         {"Leader", player_name(state_.leader)},
                                         {"Count", std::to_string(count)},
                                         {"Good", std::to_string(state_.good_points)},
                                         {"Evil", std::to_string(state_.evil_points)}}));
    while (state_.phase == Phase::Discussion) propose_and_vote(count);
    play_quest();
    if (state_.phase == Phase::AssassinWindow) assassin_turn();
    if (state_.phase == Phase::Finished) {
      announce(render("host_game_over",
                      {{"Side", std::string(side_name(*state_.winner))},
                       {"Reason", std::string(win_reason_name(*state_.win_reason))}}));
    }
    end_round(round);
    if (state_.phase == Phase::Finished) {
      log_.append(EventKind::Winner, round, std::nullopt,
                  {{"side", side_name(*state_.winner)},
                   {"reason", win_reason_name(*state_.win_reason)}});
    }
  }

  void propose_and_vote(int count) {
    const Seat leader = state_.leader;
    const int attempt = state_.proposal_attempt;
    const bool forced = state_.proposal_is_forced();
    const std::string ask =
        forced ? render("host_leader_forced",
                        {{"Leader", player_name(leader)}, {"Count", std::to_string(count)}})
               : render("host_leader", {{"Leader", player_name(leader)},
                                        {"Attempt", std::to_string(attempt)},
                                        {"Count", std::to_string(count)}});
    announce(ask, std::nullopt, Expected::PlayerChoice);
    const std::vector<Seat> all(kAllSeats.begin(), kAllSeats.end());
    const TurnRecord proposal = turn(leader, ask, ExtractionContext::player_choice(count, all));
    say(leader, proposal, "proposal", true);
    const std::vector<Seat> team = settle_team(proposal.action, count);
    announce(render("host_proposal", {{"Leader", player_name(leader)}, {"Team", seat_list(team)}}));
    log_.append(EventKind::TeamProposal, state_.round, std::nullopt,
                {{"leader", leader.index()},
                 {"team", seats_json(team)},
                 {"attempt", attempt},
                 {"forced", forced}});
    state_ = advance(state_, ProposeTeam{leader, team});
    if (forced) {
      announce(render("host_forced_team", {{"Team", seat_list(team)}}));
      return;
    }

    for (Seat speaker : clockwise_from(next_leader(leader))) {
      if (speaker == leader) continue;
      const std::string text =
          render("host_discuss", {{"Speaker", player_name(speaker)}, {"Team", seat_list(team)}});
      announce(text, std::nullopt, Expected::FreeSpeech);
      const TurnRecord record = turn(speaker, text, ExtractionContext::of(Expected::FreeSpeech));
      say(speaker, record, "discussion", true);
    }

    std::vector<Ballot> ballots;
    std::vector<std::pair<Seat, TurnRecord>> answers;
    for (Seat voter : kAllSeats) {
      const std::string text =
          render("host_vote", {{"Speaker", player_name(voter)}, {"Team", seat_list(team)}});
      announce(text, voter, Expected::TeamVote);
      TurnRecord record = turn(voter, text, ExtractionContext::of(Expected::TeamVote));
      const auto* cast = std::get_if<CastVote>(&record.action);
      ballots.push_back({voter, cast ? cast->vote : Vote::Agree});
      answers.emplace_back(voter, std::move(record));
    }
    for (const auto& [voter, record] : answers) say(voter, record, "vote", true);

    const VoteResult result = tally_team_vote(ballots);
    int agree = 0;
    auto ballot_json = nlohmann::json::array();
    for (const Ballot& b : ballots) {
      agree += b.vote == Vote::Agree;
      ballot_json.push_back({{"voter", b.voter.index()}, {"vote", vote_name(b.vote)}});
    }
    const std::string verdict = result == VoteResult::Pass ? "pass" : "reject";
    log_.append(EventKind::TeamVoteBallot, state_.round, std::nullopt,
                {{"leader", leader.index()},
                 {"team", seats_json(team)},
                 {"attempt", attempt},
                 {"ballots", ballot_json},
                 {"result", verdict}});
    announce(render("host_vote_result",
                    {{"Result", result == VoteResult::Pass ? "approved" : "rejected"},
                     {"Tally", std::to_string(agree) + " agree, " +
                                   std::to_string(kPlayerCount - agree) + " disagree"}}));
    state_ = advance(state_, TeamVoteCast{std::move(ballots)});
  }

  void play_quest() {
    const std::vector<Seat> team = *state_.current_team;
    std::vector<Seat> order = team;
    std::sort(order.begin(), order.end());
    std::vector<CardPlay> cards;
    for (Seat member : order) {
      QuestCard card = QuestCard::Success;
      if (setup_.assignment.side_of(member) == Side::Evil) {
        const std::string text = render("host_quest", {{"Speaker", player_name(member)}});
        announce(text, member, Expected::QuestCard);
        const TurnRecord record = turn(member, text, ExtractionContext::of(Expected::QuestCard));
        say(member, record, "quest", false);
        const auto* play = std::get_if<PlayCard>(&record.action);
        card = play ? play->card : QuestCard::Fail;
      }
      cards.push_back({member, card});
      log_.append(EventKind::QuestCardPlay, state_.round, member,
                  {{"player", member.index()}, {"card", card_name(card)}});
    }
    const int round = state_.round;
    state_ = advance(state_, QuestCardsPlayed{cards});
    const QuestRecord& quest = state_.quest_history.back();
    const auto fails = std::count_if(cards.begin(), cards.end(),
                                     [](const CardPlay& c) { return c.card == QuestCard::Fail; });
    log_.append(EventKind::QuestOutcome, round, std::nullopt,
                {{"team", seats_json(team)},
                 {"fails", fails},
                 {"outcome", outcome_name(quest.outcome)},
                 {"good_points", state_.good_points},
                 {"evil_points", state_.evil_points}});
    announce(render("host_quest_result", {{"Round", std::to_string(round)},
                                          {"Outcome", std::string(outcome_name(quest.outcome))},
                                          {"Fails", std::to_string(fails)},
                                          {"Good", std::to_string(state_.good_points)},
                                          {"Evil", std::to_string(state_.evil_points)}}));
  }

  void assassin_turn() {
    const auto context = *state_.assassination_window();
    const bool mandatory = context == AssassinationContext::FinalWindow;
    const Seat assassin = setup_.assignment.seat_of(Role::Assassin);
    const std::string text =
        render(mandatory ? "host_assassin_final" : "host_assassin_mid",
               {{"Speaker", player_name(assassin)}});
    announce(text, assassin, Expected::Target);
    std::vector<Seat> candidates;
    for (Seat s : kAllSeats) {
      if (s != assassin) candidates.push_back(s);
    }
    const TurnRecord record =
        turn(assassin, text, ExtractionContext::target(candidates, mandatory));
    say(assassin, record, "assassination", false);

    std::optional<Seat> guess;
    if (const auto* choose = std::get_if<ChoosePlayers>(&record.action)) {
      for (Seat s : choose->seats) {
        if (s != assassin) {
          guess = s;
          break;
        }
      }
    }
    if (!guess && mandatory) guess = candidates[host_rng_.below(candidates.size())];

    const int round = state_.round;
    state_ = advance(state_, AssassinMove{guess});
    const auto& result = state_.assassinations.back().result;
    log_.append(EventKind::AssassinGuess, round, std::nullopt,
                {{"assassin", assassin.index()},
                 {"context", context_name(context)},
                 {"guess", optional_seat(guess)},
                 {"result", result ? nlohmann::json(assassination_result_name(*result))
                                   : nlohmann::json(nullptr)}});
    if (result == AssassinationResult::Exposed) {
      announce(render("host_assassin_exposed",
                      {{"Speaker", player_name(assassin)}, {"Guess", player_name(*guess)}}));
    }
  }

  void end_round(int round) {
    for (Seat seat : kAllSeats) {
      at(seat).end_round(round);
      if (const auto summary = at(seat).rolled_summary()) {
        log_.append(EventKind::MemorySnapshot, round, seat, {{"rolled_summary", *summary}});
      }
    }
  }

  const GameSetup& setup_;
  Controllers& controllers_;
  const PromptLibrary& prompts_;
  GameState state_;
  SeededRng extraction_rng_;
  SeededRng host_rng_;
  GameLog log_;
  int turn_ = 0;
};

}  // namespace

GameSetup GameSetup::from_seed(std::string game_id, std::uint64_t seed, const GameConfig& config) {
  GameSetup setup;
  setup.game_id = std::move(game_id);
  setup.seed = seed;
  setup.config = config;
  setup.config.seed = seed;
  setup.assignment = assign_roles(seed);
  return setup;
}

GameLog run_game(const GameSetup& setup, Controllers& controllers, const PromptLibrary& prompts,
                 RunOptions options) {
  return Host(setup, controllers, prompts).run(options);
}

nlohmann::json pipeline_settings_to_json(const PipelineSettings& s) {
  return {{"analysis_enabled", s.analysis_enabled},
          {"planning_enabled", s.planning_enabled},
          {"action_enabled", s.action_enabled},
          {"analysis_scope", analysis_scope_name(s.analysis_scope)},
          {"model", s.model},
          {"temperature", s.temperature},
          {"summarizer_model", s.summarizer_model},
          {"summarizer_temperature", s.summarizer_temperature},
          {"retry_budget", s.retry_budget},
          {"char_budget", s.char_budget},
          {"summary_cap", s.summary_cap}};
}

PipelineSettings pipeline_settings_from_json(const nlohmann::json& json) {
  PipelineSettings s;
  s.analysis_enabled = json.value("analysis_enabled", s.analysis_enabled);
  s.planning_enabled = json.value("planning_enabled", s.planning_enabled);
  s.action_enabled = json.value("action_enabled", s.action_enabled);
  if (json.contains("analysis_scope")) {
    const auto scope = parse_analysis_scope(json.at("analysis_scope").get<std::string>());
    if (!scope) throw ConfigError("unknown analysis scope");
    s.analysis_scope = *scope;
  }
  s.model = json.value("model", s.model);
  s.temperature = json.value("temperature", s.temperature);
  s.summarizer_model = json.value("summarizer_model", s.summarizer_model);
  s.summarizer_temperature = json.value("summarizer_temperature", s.summarizer_temperature);
  s.retry_budget = json.value("retry_budget", s.retry_budget);
  s.char_budget = json.value("char_budget", s.char_budget);
  s.summary_cap = json.value("summary_cap", s.summary_cap);
  return s;
}

nlohmann::json extractor_settings_to_json(const ExtractorSettings& s) {
  return {{"model", s.model}, {"temperature", s.temperature}, {"retry_budget", s.retry_budget}};
}

ExtractorSettings extractor_settings_from_json(const nlohmann::json& json) {
  ExtractorSettings s;
  s.model = json.value("model", s.model);
  s.temperature = json.value("temperature", s.temperature);
  s.retry_budget = json.value("retry_budget", s.retry_budget);
  return s;
}

Controllers make_controllers(const GameSetup& setup,
                             const std::array<bool, kPlayerCount>& pipeline_seats,
                             const ProfileSet& profiles,
                             const std::map<Role, std::string>& instructions,
                             const PipelineKit& kit) {
  Controllers controllers;
  for (Seat seat : kAllSeats) {
    if (!pipeline_seats[seat.slot()]) {
      controllers[seat.slot()] = std::make_unique<RuleBot>(seat, setup.assignment, setup.seed);
      continue;
    }
    if (!kit.backend || !kit.prompts || !kit.extractor) {
      throw ConfigError("pipeline seats need a backend, prompts and an extractor");
    }
    const Role role = setup.assignment.role_of(seat);
    const RoleProfile& profile = profiles.at(role);
    const auto it = instructions.find(role);
    const std::string system = compose_system_prompt(
        *kit.prompts, profile, seat, it == instructions.end() ? std::string_view{} : it->second);
    controllers[seat.slot()] = std::make_unique<PipelineController>(std::make_unique<Agent>(
        seat, profile, system, *kit.backend, *kit.prompts, *kit.extractor, kit.settings));
  }
  return controllers;
}

GameSetup setup_from_log(const GameLog& log) {
  GameSetup setup;
  setup.game_id = log.game_id();
  setup.seed = log.seed();
  setup.config = log.config();
  setup.assignment = log.assignment();
  setup.strategy_version = log.strategy_version();
  nlohmann::json extra = log.events().front().data;
  for (const char* key :
       {"game_id", "seed", "config", "roles", "strategy_version", "seats"}) {
    extra.erase(key);
  }
  setup.extra = std::move(extra);
  return setup;
}

Controllers controllers_from_log(const GameLog& log, Backend& backend,
                                 const PromptLibrary& prompts, ActionExtractor& extractor) {
  const GameSetup setup = setup_from_log(log);
  const nlohmann::json& start = log.events().front().data;
  const PipelineSettings settings =
      pipeline_settings_from_json(start.value("pipeline_settings", nlohmann::json::object()));
  const auto& seats = start.at("seats");
  if (!seats.is_array() || seats.size() != kPlayerCount) {
    throw Error("game_start must describe six seats");
  }
  Controllers controllers;
  for (Seat seat : kAllSeats) {
    const auto& described = seats.at(seat.slot());
    const std::string kind = described.at("controller").get<std::string>();
    if (kind == "rule_bot") {
      controllers[seat.slot()] = std::make_unique<RuleBot>(seat, setup.assignment, setup.seed);
    } else if (kind == "pipeline") {
      RoleProfile profile{setup.assignment.role_of(seat),
                          described.at("introduction").get<std::string>(),
                          described.at("goal").get<std::string>(),
                          described.at("strategy").get<std::string>()};
      controllers[seat.slot()] = std::make_unique<PipelineController>(std::make_unique<Agent>(
          seat, std::move(profile), described.at("system_prompt").get<std::string>(), backend,
          prompts, extractor, settings));
    } else {
      throw Error("unknown controller kind " + kind);
    }
  }
  return controllers;
}

GameLog replay_game(const GameLog& recorded, const std::filesystem::path& exchange_log,
                    const PromptLibrary& prompts) {
  ReplayBackend backend(read_exchange_log(exchange_log));
  const nlohmann::json& start = recorded.events().front().data;
  ActionExtractor extractor(
      &backend, prompts, default_demonstrations(),
      extractor_settings_from_json(start.value("extractor_settings", nlohmann::json::object())));
  Controllers controllers = controllers_from_log(recorded, backend, prompts, extractor);
  const GameSetup setup = setup_from_log(recorded);
  GameLog replayed = run_game(setup, controllers, prompts, RunOptions{true});
  if (backend.remaining() != 0) {
    throw ReplayMismatch("replay finished with " + std::to_string(backend.remaining()) +
                             " unused exchanges",
                         backend.served());
  }
  return replayed;
}

}  // namespace avalon
