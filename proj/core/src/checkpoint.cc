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

#include "langgame/checkpoint.h"

#include <fstream>
#include <sstream>

#include "langgame/errors.h"

namespace langgame {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

ordered_json ParamsToJson(const LearningParams& p) {
  ordered_json out;
  out["initial_score"] = p.initial_score;
  out["score_reward"] = p.score_reward;
  out["score_punishment"] = p.score_punishment;
  out["inhibition"] = p.inhibition;
  out["initial_std"] = p.initial_std;
  out["initial_weight_logit"] = p.initial_weight_logit;
  out["weight_reward"] = p.weight_reward;
  out["weight_punishment"] = p.weight_punishment;
  out["std_floor"] = p.concept_params.std_floor;
  out["sigmoid_slope"] = p.concept_params.sigmoid_slope;
  out["max_subset_channels"] = p.concept_params.max_subset_channels
                                   ? ordered_json(*p.concept_params.max_subset_channels)
                                   : ordered_json(nullptr);
  return out;
}

LearningParams ParamsFromJson(const json& in) {
  LearningParams p;
  p.initial_score = in.at("initial_score").get<double>();
  p.score_reward = in.at("score_reward").get<double>();
  p.score_punishment = in.at("score_punishment").get<double>();
  p.inhibition = in.at("inhibition").get<double>();
  p.initial_std = in.at("initial_std").get<double>();
  p.initial_weight_logit = in.at("initial_weight_logit").get<double>();
  p.weight_reward = in.at("weight_reward").get<double>();
  p.weight_punishment = in.at("weight_punishment").get<double>();
  p.concept_params.std_floor = in.at("std_floor").get<double>();
  p.concept_params.sigmoid_slope = in.at("sigmoid_slope").get<double>();
  if (!in.at("max_subset_channels").is_null()) {
    p.concept_params.max_subset_channels = in.at("max_subset_channels").get<std::size_t>();
  }
  return p;
}

ordered_json AgentToJson(const Agent& agent, const ChannelSpace& channels) {
  ordered_json out;
  out["id"] = agent.id();
  ordered_json sensors = ordered_json::array();
  for (ChannelId id : agent.sensors()) sensors.push_back(channels.Name(id));
  out["sensors"] = sensors;
  ordered_json shift = ordered_json::object();
  for (ChannelId id : agent.perception().shift.Channels()) {
    shift[channels.Name(id)] = agent.perception().shift[id];
  }
  out["perception"] = {{"shift", shift}, {"noise_std", agent.perception().noise_std}};
  out["rng"] = agent.rng().SaveState();
  ordered_json inventory = ordered_json::array();
  for (const Word& word : agent.inventory()) {
    ordered_json meaning = ordered_json::array();
    for (const auto& [id, stat] : word.meaning.entries()) {
      meaning.push_back({{"channel", channels.Name(id)},
                         {"mean", stat.mean},
                         {"m2", stat.m2},
                         {"count", stat.count},
                         {"weight_logit", stat.weight_logit}});
    }
    inventory.push_back({{"form", word.form.text()}, {"score", word.score}, {"meaning", meaning}});
  }
  out["inventory"] = inventory;
  return out;
}

Agent AgentFromJson(const json& in, const ChannelSpace& channels, const LearningParams& params) {
  std::vector<ChannelId> sensors;
  for (const auto& name : in.at("sensors")) sensors.push_back(channels.Require(name.get<std::string>()));
  PerceptionProfile perception;
  perception.shift = PerceivedVector(channels.size());
  for (const auto& [name, value] : in.at("perception").at("shift").items()) {
    perception.shift.Set(channels.Require(name), value.get<double>());
  }
  perception.noise_std = in.at("perception").at("noise_std").get<double>();
  Rng rng;
  rng.LoadState(in.at("rng").get<std::string>());

  std::vector<Word> words;
  for (const auto& item : in.at("inventory")) {
    std::vector<ConceptRepresentation::Entry> entries;
    for (const auto& channel : item.at("meaning")) {
      ChannelStat stat;
      stat.mean = channel.at("mean").get<double>();
      stat.m2 = channel.at("m2").get<double>();
      stat.count = channel.at("count").get<std::uint64_t>();
      stat.weight_logit = channel.at("weight_logit").get<double>();
      entries.emplace_back(channels.Require(channel.at("channel").get<std::string>()), stat);
    }
    words.push_back({WordForm(item.at("form").get<std::string>()),
                     ConceptRepresentation(std::move(entries)), item.at("score").get<double>()});
  }
  Agent agent(in.at("id").get<AgentId>(), std::move(sensors), std::move(perception), rng, params);
  agent.RestoreInventory(std::move(words));
  return agent;
}

}  // namespace

ordered_json PopulationToJson(const Population& population) {
  ordered_json out;
  out["format"] = kCheckpointFormat;
  out["version"] = kCheckpointVersion;
  out["channels"] = population.channels.names();
  out["params"] = ParamsToJson(population.agents.empty() ? LearningParams{}
                                                         : population.agents.front().params());
  ordered_json agents = ordered_json::array();
  for (const Agent& agent : population.agents) {
    agents.push_back(AgentToJson(agent, population.channels));
  }
  out["agents"] = agents;
  return out;
}

Population PopulationFromJson(const json& in) {
  if (!in.is_object() || in.value("format", std::string()) != kCheckpointFormat) {
    throw CheckpointError("not a population checkpoint");
  }
  if (!in.contains("version") || !in["version"].is_number_integer() ||
      in["version"].get<int>() != kCheckpointVersion) {
    throw CheckpointError("unsupported checkpoint version " +
                          (in.contains("version") ? in["version"].dump() : std::string("<none>")) +
                          " (expected " + std::to_string(kCheckpointVersion) + ")");
  }
  try {
    Population population{ChannelSpace(in.at("channels").get<std::vector<std::string>>()), {}};
    const LearningParams params = ParamsFromJson(in.at("params"));
    for (const auto& agent : in.at("agents")) {
      population.agents.push_back(AgentFromJson(agent, population.channels, params));
    }
    for (std::size_t i = 0; i < population.agents.size(); ++i) {
      if (population.agents[i].id() != i) {
        throw CheckpointError("agent ids must be 0.." + std::to_string(population.agents.size() - 1));
      }
    }
    return population;
  } catch (const CheckpointError&) {
    throw;
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("corrupt checkpoint: ") + e.what());
  } catch (const std::exception& e) {
    throw CheckpointError(std::string("corrupt checkpoint: ") + e.what());
  }
}

std::string SerializePopulation(const Population& population) {
  return PopulationToJson(population).dump();
}

void SaveCheckpoint(const Population& population, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CheckpointError("cannot write checkpoint " + path.string());
  out << SerializePopulation(population) << '\n';
  if (!out) throw CheckpointError("failed writing checkpoint " + path.string());
}

Population LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint " + path.string());
  json document;
  try {
    document = json::parse(in);
  } catch (const json::parse_error& e) {
    throw CheckpointError("corrupt checkpoint " + path.string() + ": " + e.what());
  }
  return PopulationFromJson(document);
}

}  // namespace langgame
