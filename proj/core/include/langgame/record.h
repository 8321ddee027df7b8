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

#ifndef LANGGAME_RECORD_H_
#define LANGGAME_RECORD_H_

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "langgame/agent.h"

namespace langgame {

// Version of the line-delimited record format, written as "v" in each line.
inline constexpr int kRecordSchemaVersion = 1;

// Full trace of one game.
struct GameRecord {
  // 1-based within the run (or within an evaluation).
  std::uint64_t game_index = 0;
  AgentId speaker = 0;
  AgentId listener = 0;
  std::uint32_t scene_id = 0;
  // Position of the topic in the scene.
  std::uint32_t topic_index = 0;
  std::optional<WordForm> utterance;
  std::optional<std::uint32_t> listener_pointing;
  bool success = false;
  bool invented = false;
  bool adopted = false;
  // Whether the listener would have produced the same utterance.
  std::optional<bool> coherent;

  friend bool operator==(const GameRecord&, const GameRecord&) = default;
};

// {"v":1,"game":..,"speaker":..,"listener":..,"scene":..,"topic":..,
//  "utterance":str|null,"pointing":int|null,"success":bool,"invented":bool,
//  "adopted":bool,"coherent":bool|null}
nlohmann::ordered_json RecordToJson(const GameRecord& record);
// Throws DataError on schema violations.
GameRecord RecordFromJson(const nlohmann::json& json);

}  // namespace langgame

#endif  // LANGGAME_RECORD_H_
