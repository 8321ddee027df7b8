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

// Experiment configuration: a JSON document with a fixed schema. Unknown keys
// are errors; every omitted learning parameter takes its standard default.

#ifndef LANGGAME_CONFIG_H_
#define LANGGAME_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "langgame/agent.h"
#include "langgame/game.h"
#include "langgame/world.h"

namespace langgame {

struct DatasetSource {
  enum class Type { kTable, kSynthetic };
  Type type = Type::kSynthetic;

  // kTable
  std::filesystem::path path;
  TableSchema schema;

  // kSynthetic. Without a seed the data is regenerated from each run's seed.
  SyntheticSpec synthetic;
  std::optional<std::uint64_t> seed;
};

struct SplitConfig {
  double train_fraction = 0.9;
  std::size_t train_scenes = 20000;
  std::size_t test_scenes = 1000;
  SizeRange scene_size;
  // Externally built scene lists. A training scene file replaces the random
  // split; test scene files are then required and name the test sets.
  std::optional<std::filesystem::path> train_scene_file;
  std::map<std::string, std::filesystem::path> test_scene_files;
};

struct DatasetConfig {
  std::string name;
  DatasetSource source;
  SplitConfig split;
};

struct OutputConfig {
  std::size_t window = kDefaultWindow;
  std::uint64_t series_stride = 1000;
  bool records = true;
  bool checkpoint = true;
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::uint64_t seed = 1;
  std::size_t repetitions = 1;
  std::uint64_t games = 1000000;
  std::string initial_dataset;
  std::vector<DatasetConfig> datasets;
  std::size_t population_size = 10;
  SensorEndowment sensors;
  LearningParams learning;
  PerceptionSettings perception;
  std::vector<ScheduleEvent> schedule;
  std::vector<EvaluationRequest> evaluations;
  OutputConfig output;

  const DatasetConfig* FindDataset(const std::string& name) const;
};

// Parses and validates. Throws ConfigError naming the offending field as a
// dotted path, e.g. "learning.initial_weight" or "datasets[1].split.scene_size".
ExperimentConfig ParseConfig(const nlohmann::json& json);
ExperimentConfig LoadConfig(const std::filesystem::path& path);

// Every field, defaults included. ParseConfig(ConfigToJson(c)) reproduces c.
nlohmann::ordered_json ConfigToJson(const ExperimentConfig& config);

// Checks that do not need the data: value ranges, references between
// sections and schedule ordering.
void ValidateConfig(const ExperimentConfig& config);

// The channel weight stored for a new channel, from the initial weight
// omega in (0, 1).
double WeightLogit(double initial_weight, double sigmoid_slope);

// Cartesian product of parameter values. `grid` maps dotted config paths
// (e.g. "learning.score_reward") to value lists; each combination yields one
// config whose name gets a suffix describing the combination.
std::vector<nlohmann::ordered_json> ExpandSweep(const nlohmann::ordered_json& base,
                                                const nlohmann::json& grid);

}  // namespace langgame

#endif  // LANGGAME_CONFIG_H_
