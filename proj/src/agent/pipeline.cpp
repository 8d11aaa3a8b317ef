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

#include "avalon/agent/pipeline.hpp"

#include <utility>

#include "avalon/error.hpp"

namespace avalon {

std::string_view analysis_scope_name(AnalysisScope scope) {
  switch (scope) {
    case AnalysisScope::AllPlayers: return "all_players";
    case AnalysisScope::TeammatesOnly: return "teammates_only";
    case AnalysisScope::AdversariesOnly: return "adversaries_only";
  }
  return "?";
}

std::optional<AnalysisScope> parse_analysis_scope(std::string_view text) {
  for (AnalysisScope scope : {AnalysisScope::AllPlayers, AnalysisScope::TeammatesOnly,
                              AnalysisScope::AdversariesOnly}) {
    if (text == analysis_scope_name(scope)) return scope;
  }
  return std::nullopt;
}

std::string compose_system_prompt(const PromptLibrary& prompts, const RoleProfile& profile,
                                  Seat seat, std::string_view instructions) {
  profile.validate();
  const std::string rules =
      instructions.empty() ? prompts.get("game_rules") : std::string(instructions);
  const std::string role_block = prompts.render(
      "role_block", {{"role", std::string(role_name(profile.role))},
                     {"Role Introduction", profile.introduction},
                     {"Goal", profile.goal},
                     {"Strategy", profile.strategy},
                     {"player", player_name(seat)}});
  return rules + "\n" + role_block;
}

std::string render_memory(const MemoryView& view) {
  std::string out = view.rolled_summary;
  if (!view.objects.empty()) {
    if (!out.empty()) out += "\n";
    out += "Current round:";
    for (const MemoryObject& object : view.objects) {
      out += "\n" + object.speaker_name();
      if (!object.visibility.is_public()) out += " (private)";
      out += ": " + object.content;
    }
  }
  return out.empty() ? std::string("None") : out;
}

Agent::Agent(Seat seat, RoleProfile profile, std::string system_prompt, Backend& backend,
             const PromptLibrary& prompts, ActionExtractor& extractor, PipelineSettings settings)
    : seat_(seat),
      profile_(std::move(profile)),
      system_prompt_(std::move(system_prompt)),
      backend_(&backend),
      prompts_(&prompts),
      extractor_(&extractor),
      settings_(std::move(settings)),
      memory_(seat, settings_.summary_cap) {
  profile_.validate();
  if (settings_.retry_budget < 0) throw ConfigError("retry budget must be non-negative");
}

std::string Agent::call(Stage stage, Purpose purpose, const std::string& user, int round,
                        int turn) {
  const bool summarizer = purpose == Purpose::Summarizer;
  const CompletionRequest request = make_request(
      summarizer ? std::string() : system_prompt_, user, purpose,
      CallTag{stage, seat_, round, turn}, summarizer ? settings_.summarizer_model : settings_.model,
      summarizer ? settings_.summarizer_temperature : settings_.temperature);
  for (int attempt = 0;; ++attempt) {
    try {
      return strip_sentinel(backend_->complete(request));
    } catch (const BackendError& e) {
      if (!e.retryable() || attempt >= settings_.retry_budget) throw;
    }
  }
}

std::string Agent::role_information() const {
  return prompts_->render("role_information", {{"Role", std::string(role_name(profile_.role))},
                                               {"Role Introduction", profile_.introduction}});
}

AnalysisReport Agent::analyze(int round, int turn) {
  AnalysisReport report{seat_, round, ""};
  if (!settings_.analysis_enabled) return report;
  std::string prompt =
      prompts_->render("analysis", {{"Name", player_name(seat_)},
                                    {"Role", std::string(role_name(profile_.role))},
                                    {"Summary", render_memory(memory_.visible_view())}});
  if (settings_.analysis_scope == AnalysisScope::TeammatesOnly) {
    prompt += "\n" + prompts_->get("analysis_scope_teammates");
  } else if (settings_.analysis_scope == AnalysisScope::AdversariesOnly) {
    prompt += "\n" + prompts_->get("analysis_scope_adversaries");
  }
  report.content = call(Stage::Analysis, Purpose::Agent, prompt, round, turn);
  return report;
}

std::string Agent::previous_plan_text(int round) const {
  for (auto it = plans_.rbegin(); it != plans_.rend(); ++it) {
    if (it->round < round) return it->content;
  }
  return prompts_->get("empty_plan");
}

Plan Agent::plan(const AnalysisReport& analysis, int round, int turn) {
  Plan plan{seat_, round, ""};
  if (!settings_.planning_enabled) return plan;
  const std::string prompt =
      prompts_->render("planning", {{"Role Information", role_information()},
                                    {"Goal", profile_.goal},
                                    {"Strategy", profile_.strategy},
                                    {"Plan", previous_plan_text(round)},
                                    {"Summary", render_memory(memory_.visible_view())},
                                    {"Analysis", analysis.content}});
  plan.content = call(Stage::Planning, Purpose::Agent, prompt, round, turn);
  plans_.push_back(plan);
  return plan;
}

std::string Agent::decide_action_text(const AnalysisReport& analysis, const Plan& plan,
                                      const HostInstruction& instruction, int turn) {
  const std::string prompt =
      prompts_->render("action", {{"Role Information", role_information()},
                                  {"Goal", profile_.goal},
                                  {"Strategy", profile_.strategy},
                                  {"Plan", plan.content},
                                  {"Summary", render_memory(memory_.visible_view())},
                                  {"Analysis", analysis.content},
                                  {"Instruction", instruction.text}});
  return call(Stage::Action, Purpose::Agent, prompt, instruction.round, turn);
}

std::string Agent::respond(const Plan& plan, const HostInstruction& instruction,
                           const std::string& actions, int turn) {
  const std::string prompt =
      prompts_->render("response", {{"Role Information", role_information()},
                                    {"Goal", profile_.goal},
                                    {"Strategy", profile_.strategy},
                                    {"Plan", plan.content},
                                    {"Summary", render_memory(memory_.visible_view())},
                                    {"Instruction", instruction.text},
                                    {"actions", actions}});
  return call(Stage::Response, Purpose::Agent, prompt, instruction.round, turn);
}

TurnRecord Agent::take_turn(const HostInstruction& instruction, const ExtractionContext& ctx_in,
                            SeededRng& rng, int turn) {
  ExtractionContext ctx = ctx_in;
  ctx.self = seat_;
  const int round = instruction.round;
  TurnRecord record;
  record.round = round;
  record.turn = turn;
  record.instruction = instruction;
  record.analysis = AnalysisReport{seat_, round, ""};
  record.plan = Plan{seat_, round, ""};

  if (render_memory(memory_.visible_view()).size() > settings_.char_budget) {
    summarize(Stage::EmergencySummarize, round, turn);
  }

  const CallTag extract_tag{Stage::Extract, seat_, round, turn};
  Reasker reask;
  if (ctx.expected == Expected::PlayerChoice || ctx.expected == Expected::Target) {
    reask = [&, this](int) {
      HostInstruction again = instruction;
      if (ctx.expected == Expected::PlayerChoice) {
        again.text += "\n" + prompts_->render("host_reask_players",
                                              {{"Count", std::to_string(ctx.required_count)}});
      }
      return respond(record.plan, again, record.action_text, turn);
    };
  }

  bool extracted = false;
  try {
    record.analysis = analyze(round, turn);
    record.plan = plan(record.analysis, round, turn);
    if (settings_.action_enabled) {
      record.action_text = decide_action_text(record.analysis, record.plan, instruction, turn);
      record.action = extractor_->extract(record.action_text, ctx, reask, rng, extract_tag);
      extracted = true;
      record.response = respond(record.plan, instruction, describe_action(record.action), turn);
    } else {
      record.response = respond(record.plan, instruction, "", turn);
      record.action = extractor_->extract(record.response, ctx, reask, rng, extract_tag);
      extracted = true;
    }
  } catch (const BackendError& e) {
    if (!e.retryable()) throw;
    record.degraded = true;
    record.failure = e.what();
    if (!extracted) record.action = ActionExtractor::default_action(ctx, rng);
    if (record.response.empty() || !extracted) record.response = public_statement(record.action);
  }
  return record;
}

bool Agent::summarize(Stage stage, int round, int turn) {
  const std::string prompt = prompts_->render(
      "summarization",
      {{"Player i", player_name(seat_)}, {"conversations", memory_.summarizer_input()}});
  std::string summary;
  try {
    summary = call(stage, Purpose::Summarizer, prompt, round, turn);
  } catch (const BackendError& e) {
    if (!e.retryable()) throw;
    return false;
  }
  memory_.roll_round([&](const std::string&) { return summary; });
  return true;
}

bool Agent::end_round(int round) {
  const bool rolled = summarize(Stage::Summarize, round, -1);
  round_summaries_.push_back(memory_.rolled_summary());
  return rolled;
}

}  // namespace avalon
