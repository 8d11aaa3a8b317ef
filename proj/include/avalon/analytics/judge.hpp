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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avalon/agent/templates.hpp"
#include "avalon/backend/backend.hpp"
#include "avalon/game/types.hpp"

namespace avalon {

enum class JudgeTask { SelfRecommendation, Deception, Attitude };
enum class JudgeKind { Backend, Rule };

std::string_view judge_task_name(JudgeTask task);
std::string_view judge_kind_name(JudgeKind kind);

/// Closed label set of a task, e.g. {"trust", "distrust", "ambivalent"}.
const std::vector<std::string>& judge_labels(JudgeTask task);

struct JudgeQuery {
  JudgeTask task = JudgeTask::Attitude;
  Seat speaker = Seat(1);
  Role speaker_role = Role::LoyalServant;
  std::string utterance;
  /// Attitude only.
  std::optional<Seat> target;
};

struct JudgeVerdict {
  std::string label;
  std::string rationale;
  JudgeKind kind = JudgeKind::Rule;
};

/// Utterance classifier. nullopt means the utterance could not be judged;
/// callers exclude it and count it.
class Judge {
 public:
  virtual ~Judge() = default;
  virtual std::optional<JudgeVerdict> judge(const JudgeQuery& query) = 0;
  virtual JudgeKind kind() const = 0;
};

/// Deterministic keyword judge.
class RuleJudge final : public Judge {
 public:
  std::optional<JudgeVerdict> judge(const JudgeQuery& query) override;
  JudgeKind kind() const override { return JudgeKind::Rule; }
};

/// Asks a backend with the judge prompts and reads the first label found.
class BackendJudge final : public Judge {
 public:
  BackendJudge(Backend& backend, const PromptLibrary& prompts,
               std::string model = "gpt-3.5-turbo-16k", double temperature = 0.0);

  std::optional<JudgeVerdict> judge(const JudgeQuery& query) override;
  JudgeKind kind() const override { return JudgeKind::Backend; }

  std::string render_prompt(const JudgeQuery& query) const;

 private:
  Backend* backend_;
  const PromptLibrary* prompts_;
  std::string model_;
  double temperature_;
};

/// The earliest label of the task's set in `answer`; ties go to the longer one.
std::optional<std::string> find_label(JudgeTask task, std::string_view answer);

}  // namespace avalon
