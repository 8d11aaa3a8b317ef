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

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avalon/game/types.hpp"

namespace avalon {

/// Public, or private to exactly one seat.
class Visibility {
 public:
  static Visibility Public() { return Visibility(std::nullopt); }
  static Visibility Private(Seat owner) { return Visibility(owner); }

  bool is_public() const { return !owner_.has_value(); }
  /// The owning seat of a private object.
  std::optional<Seat> owner() const { return owner_; }
  bool visible_to(Seat seat) const { return !owner_ || *owner_ == seat; }

  bool operator==(const Visibility&) const = default;

 private:
  explicit Visibility(std::optional<Seat> owner) : owner_(owner) {}
  std::optional<Seat> owner_;
};

/// One recorded utterance or host statement.
struct MemoryObject {
  /// nullopt means the host.
  std::optional<Seat> speaker;
  std::string content;
  int round = 1;
  Visibility visibility = Visibility::Public();

  /// "Player 3" or "Host".
  std::string speaker_name() const;
  bool operator==(const MemoryObject&) const = default;
};

struct MemoryView {
  std::string rolled_summary;
  std::vector<MemoryObject> objects;
};

/// Maps the text fed to a summarizer to the new summary. May throw.
using Summarizer = std::function<std::string(const std::string&)>;

inline constexpr std::size_t kSummaryHardCap = 4000;

/// One agent's memory: the summary of every finished round plus the objects
/// recorded in the current round.
class MemoryStore {
 public:
  explicit MemoryStore(Seat owner, std::size_t summary_cap = kSummaryHardCap)
      : owner_(owner), summary_cap_(summary_cap) {}

  Seat owner() const { return owner_; }

  /// Appends an object. Throws VisibilityViolation for a private object
  /// owned by another seat.
  void record(MemoryObject object);

  MemoryView visible_view() const { return {rolled_summary_, current_objects_}; }

  const std::string& rolled_summary() const { return rolled_summary_; }
  const std::vector<MemoryObject>& current_objects() const { return current_objects_; }

  /// The text a summarizer receives: the previous summary followed by the
  /// current objects serialized as a JSON array.
  std::string summarizer_input() const;

  /// Replaces the summary with summarizer(summarizer_input()) and clears the
  /// current objects. On failure the store is unchanged and SummarizerError
  /// is thrown.
  void roll_round(const Summarizer& summarizer);

 private:
  Seat owner_;
  std::size_t summary_cap_;
  std::string rolled_summary_;
  std::vector<MemoryObject> current_objects_;
};

/// The summarization-prompt serialization: a JSON array of
/// {"message", "name", "message_type"} objects.
std::string serialize_conversations(const std::vector<MemoryObject>& objects);

/// Truncates to at most `cap` bytes without splitting a UTF-8 sequence.
std::string truncate_utf8(std::string text, std::size_t cap);

}  // namespace avalon
