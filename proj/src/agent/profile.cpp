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

#include "avalon/agent/profile.hpp"

#include <fstream>

#include "avalon/embedded_data.hpp"
#include "avalon/error.hpp"

namespace avalon {

void RoleProfile::validate() const {
  if (introduction.empty() || goal.empty() || strategy.empty()) {
    throw ConfigError("profile for " + std::string(role_name(role)) + " has an empty field");
  }
}

ProfileSet profiles_from_json(const nlohmann::json& json) {
  ProfileSet profiles;
  for (Role role : kAllRoles) {
    const std::string key(role_key(role));
    if (!json.contains(key)) throw ConfigError("profile file lacks role " + key);
    const auto& entry = json.at(key);
    RoleProfile profile{role, entry.value("introduction", std::string()),
                        entry.value("goal", std::string()), entry.value("strategy", std::string())};
    profile.validate();
    profiles.emplace(role, std::move(profile));
  }
  return profiles;
}

const ProfileSet& default_profiles() {
  static const ProfileSet profiles =
      profiles_from_json(nlohmann::json::parse(embedded::kRoleProfiles));
  return profiles;
}

ProfileSet load_profiles(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read profile file " + path.string());
  try {
    return profiles_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("profile file " + path.string() + " is not valid JSON: " + e.what());
  }
}

}  // namespace avalon
