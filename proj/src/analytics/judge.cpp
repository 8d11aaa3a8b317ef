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

#include "avalon/analytics/judge.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "avalon/error.hpp"
#include "avalon/extraction/extractor.hpp"

namespace avalon {
namespace {

constexpr auto kIcase = std::regex::ECMAScript | std::regex::icase;

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool search(const std::string& text, const std::regex& pattern) {
  return std::regex_search(text, pattern);
}

JudgeVerdict rule_verdict(std::string label, std::string rationale) {
  return JudgeVerdict{std::move(label), std::move(rationale), JudgeKind::Rule};
}

std::optional<JudgeVerdict> rule_self_recommendation(const JudgeQuery& query) {
  static const std::regex first_person(
      R"(\b(myself|include me|including me|me and|and me|i will (join|go)|i should (join|go|be)|i('ll| will) be on|i volunteer)\b)",
      kIcase);
  const auto seats = rule_extract::mentioned_seats(query.utterance, query.speaker);
  const bool names_self = std::find(seats.begin(), seats.end(), query.speaker) != seats.end();
  if (names_self || search(query.utterance, first_person)) {
    return rule_verdict("self_proposal", "the speaker names their own seat for the team");
  }
  return rule_verdict("no_self_proposal", "no reference to the speaker joining the team");
}

std::optional<JudgeVerdict> rule_deception(const JudgeQuery& query) {
  static const std::regex claim(
      R"(\b(?:i am|i'm|i’m|as)\s+(?:a |an |the |one of the )?(merlin|percival|loyal servant|servant|morgana|assassin|good|loyal|evil|minion)\b)",
      kIcase);
  std::smatch match;
  if (!std::regex_search(query.utterance, match, claim)) {
    return rule_verdict("withholding", "no identity claim");
  }
  const std::string claimed = lowercase(match[1].str());
  const Side true_side = side_of(query.speaker_role);
  if (const auto role = parse_role(claimed == "servant" ? "loyal_servant" : claimed)) {
    if (*role == query.speaker_role) return rule_verdict("self_disclosure", "claims the true role");
    return rule_verdict("camouflage", "claims a role the speaker does not hold");
  }
  const Side claimed_side =
      (claimed == "evil" || claimed == "minion") ? Side::Evil : Side::Good;
  if (claimed_side != true_side) return rule_verdict("camouflage", "claims the other side");
  return rule_verdict("withholding", "claims only the true side");
}

std::optional<JudgeVerdict> rule_attitude(const JudgeQuery& query) {
  static const std::regex distrust(
      R"(\b(distrust|suspect|suspicious|doubt|evil|against|reject|don't trust|do not trust|not trust|can't trust|cannot trust|wary|liar|lying)\b)",
      kIcase);
  static const std::regex trust(
      R"(\b(trust|trustworthy|believe|support|agree with|confident|reliable|ally|good choice|vouch)\b)",
      kIcase);
  if (!query.target) return std::nullopt;
  if (search(query.utterance, distrust)) return rule_verdict("distrust", "confrontational wording");
  if (search(query.utterance, trust)) return rule_verdict("trust", "cooperative wording");
  return rule_verdict("ambivalent", "no stance keywords");
}

}  // namespace

std::string_view judge_task_name(JudgeTask task) {
  switch (task) {
    case JudgeTask::SelfRecommendation: return "self_recommendation";
    case JudgeTask::Deception: return "deception";
    case JudgeTask::Attitude: return "attitude";
  }
  return "?";
}

std::string_view judge_kind_name(JudgeKind kind) {
  return kind == JudgeKind::Backend ? "backend" : "rule";
}

const std::vector<std::string>& judge_labels(JudgeTask task) {
  static const std::vector<std::string> self_rec = {"self_proposal", "no_self_proposal"};
  static const std::vector<std::string> deception = {"self_disclosure", "camouflage",
                                                     "withholding"};
  static const std::vector<std::string> attitude = {"trust", "distrust", "ambivalent"};
  switch (task) {
    case JudgeTask::SelfRecommendation: return self_rec;
    case JudgeTask::Deception: return deception;
    case JudgeTask::Attitude: return attitude;
  }
  throw Error("unknown judge task");
}

std::optional<std::string> find_label(JudgeTask task, std::string_view answer) {
  const std::string text = lowercase(answer);
  std::optional<std::string> best;
  std::size_t best_pos = std::string::npos;
  for (const std::string& label : judge_labels(task)) {
    const std::regex pattern("(^|[^a-z_])" + label + "($|[^a-z_])");
    std::smatch match;
    if (!std::regex_search(text, match, pattern)) continue;
    const auto pos = static_cast<std::size_t>(match.position());
    if (!best || pos < best_pos || (pos == best_pos && label.size() > best->size())) {
      best = label;
      best_pos = pos;
    }
  }
  return best;
}

std::optional<JudgeVerdict> RuleJudge::judge(const JudgeQuery& query) {
  switch (query.task) {
    case JudgeTask::SelfRecommendation: return rule_self_recommendation(query);
    case JudgeTask::Deception: return rule_deception(query);
    case JudgeTask::Attitude: return rule_attitude(query);
  }
  return std::nullopt;
}

BackendJudge::BackendJudge(Backend& backend, const PromptLibrary& prompts, std::string model,
                           double temperature)
    : backend_(&backend), prompts_(&prompts), model_(std::move(model)), temperature_(temperature) {}

std::string BackendJudge::render_prompt(const JudgeQuery& query) const {
  const std::string speaker = player_name(query.speaker);
  switch (query.task) {
    case JudgeTask::SelfRecommendation:
      return prompts_->render("judge_self_recommendation",
                              {{"Speaker", speaker}, {"Utterance", query.utterance}});
    case JudgeTask::Deception:
      return prompts_->render("judge_deception",
                              {{"Speaker", speaker},
                               {"Role", std::string(role_name(query.speaker_role))},
                               {"Utterance", query.utterance}});
    case JudgeTask::Attitude:
      if (!query.target) throw Error("attitude query without a target");
      return prompts_->render("judge_attitude", {{"Speaker", speaker},
                                                 {"Target", player_name(*query.target)},
                                                 {"Utterance", query.utterance}});
  }
  throw Error("unknown judge task");
}

std::optional<JudgeVerdict> BackendJudge::judge(const JudgeQuery& query) {
  if (query.task == JudgeTask::Attitude && !query.target) return std::nullopt;
  const CompletionRequest request =
      make_request("", render_prompt(query), Purpose::Judge,
                   CallTag{Stage::Judge, query.speaker, 0, -1}, model_, temperature_);
  std::string answer;
  try {
    answer = backend_->complete(request);
  } catch (const BackendError&) {
    return std::nullopt;
  }
  const auto label = find_label(query.task, answer);
  if (!label) return std::nullopt;
  return JudgeVerdict{*label, answer, JudgeKind::Backend};
}

}  // namespace avalon
