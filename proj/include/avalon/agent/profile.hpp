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

#include <filesystem>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "avalon/game/types.hpp"

namespace avalon {

/// Role information, winning condition and playing strategy of one role.
struct RoleProfile {
  Role role;
  std::string introduction;
  std::string goal;
  std::string strategy;

  /// Throws ConfigError when a text field is empty.
  void validate() const;
};

using ProfileSet = std::map<Role, RoleProfile>;

/// The compiled-in profiles from data/role_profiles.json.
const ProfileSet& default_profiles();
ProfileSet profiles_from_json(const nlohmann::json& json);
ProfileSet load_profiles(const std::filesystem::path& path);

}  // namespace avalon
