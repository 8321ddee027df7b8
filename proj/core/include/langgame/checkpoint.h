// Copyright 2026 The Langgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Population checkpoints: a versioned JSON document holding the channel
// namespace, the learning parameters and every agent's full state (sensors,
// perception profile, random stream and inventory). Doubles are written in
// shortest round-trip form, so a reloaded population behaves identically.

#ifndef LANGGAME_CHECKPOINT_H_
#define LANGGAME_CHECKPOINT_H_

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "langgame/game.h"

namespace langgame {

inline constexpr int kCheckpointVersion = 1;
inline constexpr const char* kCheckpointFormat = "langgame-checkpoint";

nlohmann::ordered_json PopulationToJson(const Population& population);
// Throws CheckpointError for documents of another format or version and for
// malformed content.
Population PopulationFromJson(const nlohmann::json& json);

// Canonical serialization, used for byte comparisons.
std::string SerializePopulation(const Population& population);

void SaveCheckpoint(const Population& population, const std::filesystem::path& path);
Population LoadCheckpoint(const std::filesystem::path& path);

}  // namespace langgame

#endif  // LANGGAME_CHECKPOINT_H_
