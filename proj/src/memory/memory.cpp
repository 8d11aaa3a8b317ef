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

#include "avalon/memory/memory.hpp"

#include <exception>

#include <nlohmann/json.hpp>

#include "avalon/error.hpp"

namespace avalon {

std::string MemoryObject::speaker_name() const {
  return speaker ? player_name(*speaker) : std::string("Host");
}

void MemoryStore::record(MemoryObject object) {
  if (!object.visibility.visible_to(owner_)) {
    throw VisibilityViolation("private object for " + player_name(*object.visibility.owner()) +
                              " offered to the memory of " + player_name(owner_));
  }
  current_objects_.push_back(std::move(object));
}

std::string MemoryStore::summarizer_input() const {
  if (current_objects_.empty()) return rolled_summary_;
  std::string serialized = serialize_conversations(current_objects_);
  if (rolled_summary_.empty()) return serialized;
  return rolled_summary_ + "\n" + serialized;
}

void MemoryStore::roll_round(const Summarizer& summarizer) {
  std::string summary;
  try {
    summary = summarizer(summarizer_input());
  } catch (const std::exception& e) {
    throw SummarizerError(std::string("summarization failed, memory left unchanged: ") +
                          e.what());
  }
  rolled_summary_ = truncate_utf8(std::move(summary), summary_cap_);
  current_objects_.clear();
}

std::string serialize_conversations(const std::vector<MemoryObject>& objects) {
  auto array = nlohmann::ordered_json::array();
  for (const MemoryObject& object : objects) {
    array.push_back({{"message", object.content},
                     {"name", object.speaker_name()},
                     {"message_type", object.visibility.is_public() ? "public" : "private"}});
  }
  return array.dump();
}

std::string truncate_utf8(std::string text, std::size_t cap) {
  if (text.size() <= cap) return text;
  std::size_t cut = cap;
  // Back up over continuation bytes (10xxxxxx) so a code point is never split.
  while (cut > 0 && (static_cast<unsigned char>(text[cut]) & 0xC0) == 0x80) --cut;
  text.resize(cut);
  return text;
}

}  // namespace avalon
