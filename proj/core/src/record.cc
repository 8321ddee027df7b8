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

#include "langgame/record.h"

#include "langgame/errors.h"

namespace langgame {

nlohmann::ordered_json RecordToJson(const GameRecord& record) {
  nlohmann::ordered_json json;
  json["v"] = kRecordSchemaVersion;
  json["game"] = record.game_index;
  json["speaker"] = record.speaker;
  json["listener"] = record.listener;
  json["scene"] = record.scene_id;
  json["topic"] = record.topic_index;
  json["utterance"] = record.utterance ? nlohmann::ordered_json(record.utterance->text())
                                       : nlohmann::ordered_json(nullptr);
  json["pointing"] = record.listener_pointing
                         ? nlohmann::ordered_json(*record.listener_pointing)
                         : nlohmann::ordered_json(nullptr);
  json["success"] = record.success;
  json["invented"] = record.invented;
  json["adopted"] = record.adopted;
  json["coherent"] = record.coherent ? nlohmann::ordered_json(*record.coherent)
                                     : nlohmann::ordered_json(nullptr);
  return json;
}

GameRecord RecordFromJson(const nlohmann::json& json) {
  try {
    if (json.at("v").get<int>() != kRecordSchemaVersion) {
      throw DataError("unsupported record schema version " + json.at("v").dump());
    }
    GameRecord record;
    record.game_index = json.at("game").get<std::uint64_t>();
    record.speaker = json.at("speaker").get<AgentId>();
    record.listener = json.at("listener").get<AgentId>();
    record.scene_id = json.at("scene").get<std::uint32_t>();
    record.topic_index = json.at("topic").get<std::uint32_t>();
    if (!json.at("utterance").is_null()) {
      record.utterance = WordForm(json.at("utterance").get<std::string>());
    }
    if (!json.at("pointing").is_null()) {
      record.listener_pointing = json.at("pointing").get<std::uint32_t>();
    }
    record.success = json.at("success").get<bool>();
    record.invented = json.at("invented").get<bool>();
    record.adopted = json.at("adopted").get<bool>();
    if (!json.at("coherent").is_null()) record.coherent = json.at("coherent").get<bool>();
    return record;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed game record: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("malformed game record: ") + e.what());
  }
}

}  // namespace langgame
