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

#include "langgame/presets.h"

#include <algorithm>
#include <cmath>

#include "langgame/errors.h"

namespace langgame {
namespace {

constexpr std::uint64_t kTrainingGames = 1000000;
constexpr std::uint64_t kEvaluationGames = 100000;

DatasetConfig Clevr() {
  DatasetConfig d;
  d.name = "clevr";
  d.source.type = DatasetSource::Type::kTable;
  d.source.path = "data/clevr/features.csv";
  d.source.schema.expected_channels = 20;
  d.split.train_scene_file = "data/clevr/train_scenes.txt";
  d.split.test_scene_files["test"] = "data/clevr/test_scenes.txt";
  return d;
}

DatasetConfig Cogent() {
  DatasetConfig d;
  d.name = "cogent";
  d.source.type = DatasetSource::Type::kTable;
  d.source.path = "data/cogent/features.csv";
  d.source.schema.expected_channels = 20;
  d.split.train_scene_file = "data/cogent/train_scenes.txt";
  d.split.test_scene_files["A"] = "data/cogent/test_scenes_a.txt";
  d.split.test_scene_files["B"] = "data/cogent/test_scenes_b.txt";
  return d;
}

DatasetConfig Wine() {
  DatasetConfig d;
  d.name = "wine";
  d.source.type = DatasetSource::Type::kTable;
  d.source.path = "data/winequality-white.csv";
  d.source.schema.delimiter = ';';
  d.source.schema.exclude = {"quality"};
  d.source.schema.expected_channels = 11;
  d.split.train_fraction = 0.9;
  d.split.train_scenes = 20000;
  d.split.test_scenes = 1000;
  return d;
}

DatasetConfig Credit() {
  DatasetConfig d;
  d.name = "credit";
  d.source.type = DatasetSource::Type::kTable;
  d.source.path = "data/creditcard.csv";
  for (int i = 1; i <= 28; ++i) d.source.schema.columns.push_back("V" + std::to_string(i));
  d.source.schema.expected_channels = 28;
  d.split.train_fraction = 0.9;
  d.split.train_scenes = 40000;
  d.split.test_scenes = 4000;
  return d;
}

ExperimentConfig Single(const std::string& name, DatasetConfig dataset) {
  ExperimentConfig config;
  config.name = name;
  config.games = kTrainingGames;
  config.initial_dataset = dataset.name;
  config.evaluations.push_back(
      {kTrainingGames, dataset.name, "test", kEvaluationGames, dataset.name});
  config.datasets.push_back(std::move(dataset));
  return config;
}

ExperimentConfig Build(const std::string& name) {
  if (name == "baseline-clevr") return Single(name, Clevr());
  if (name == "baseline-wine") return Single(name, Wine());
  if (name == "baseline-credit") return Single(name, Credit());
  if (name == "cogent") {
    ExperimentConfig config = Single(name, Cogent());
    config.evaluations = {{kTrainingGames, "cogent", "A", kEvaluationGames, "cogent-a"},
                          {kTrainingGames, "cogent", "B", kEvaluationGames, "cogent-b"}};
    return config;
  }
  if (name == "hetero-19" || name == "hetero-10") {
    ExperimentConfig config = Single(name, Clevr());
    config.sensors.mode = SensorEndowment::Mode::kRandom;
    config.sensors.count = name == "hetero-19" ? 19 : 10;
    return config;
  }
  if (name == "defect-1" || name == "defect-10") {
    ExperimentConfig config = Single(name, Clevr());
    ScheduleEvent defect;
    defect.at = 500000;
    defect.kind = ScheduleEvent::Kind::kSensorDefect;
    defect.lost_per_agent = name == "defect-1" ? 1 : 10;
    config.schedule.push_back(defect);
    return config;
  }
  if (name == "shift-0.1" || name == "shift-1") {
    ExperimentConfig config = Single(name, Clevr());
    config.perception.shift_std = name == "shift-0.1" ? 0.1 : 1.0;
    return config;
  }
  if (name == "noise-0.1" || name == "noise-1") {
    ExperimentConfig config = Single(name, Clevr());
    config.perception.noise_std = name == "noise-0.1" ? 0.1 : 1.0;
    return config;
  }
  if (name == "continual") {
    ExperimentConfig config = Single(name, Clevr());
    config.datasets.push_back(Wine());
    config.games = 2 * kTrainingGames;
    ScheduleEvent next;
    next.at = kTrainingGames;
    next.kind = ScheduleEvent::Kind::kSwitchDataset;
    next.dataset = "wine";
    config.schedule.push_back(next);
    config.evaluations = {
        {kTrainingGames, "clevr", "test", kEvaluationGames, "clevr"},
        {2 * kTrainingGames, "wine", "test", kEvaluationGames, "clevr-wine"},
        {2 * kTrainingGames, "clevr", "test", kEvaluationGames, "clevr-cont"},
    };
    return config;
  }
  throw ConfigError("<preset>", "unknown preset '" + name + "'");
}

std::uint64_t Scale(std::uint64_t value, double factor) {
  return static_cast<std::uint64_t>(std::llround(static_cast<double>(value) * factor));
}

}  // namespace

std::vector<std::string> PresetNames() {
  return {"baseline-clevr", "baseline-wine", "baseline-credit", "cogent",
          "hetero-19",      "hetero-10",     "defect-1",        "defect-10",
          "shift-0.1",      "shift-1",       "noise-0.1",       "noise-1",
          "continual"};
}

ExperimentConfig Preset(const std::string& name) {
  ExperimentConfig config = Build(name);
  ValidateConfig(config);
  return config;
}

ExperimentConfig DeskScale(const ExperimentConfig& config, std::uint64_t games) {
  ExperimentConfig out = config;
  for (auto& dataset : out.datasets) {
    if (dataset.source.type == DatasetSource::Type::kTable) {
      const std::size_t channels = dataset.source.schema.expected_channels.value_or(
          std::max<std::size_t>(dataset.source.schema.columns.size(), 5));
      dataset.source = DatasetSource{};
      dataset.source.type = DatasetSource::Type::kSynthetic;
      dataset.source.synthetic.channels = channels;
      dataset.source.synthetic.channel_prefix = dataset.name + ".f";
    }
    if (dataset.split.train_scene_file) {
      dataset.split.train_scene_file.reset();
      dataset.split.test_scene_files.clear();
      dataset.split.train_scenes = 20000;
      dataset.split.test_scenes = 1000;
    }
  }
  for (auto& request : out.evaluations) {
    const DatasetConfig* dataset = out.FindDataset(request.dataset);
    if (dataset && !dataset->split.train_scene_file) request.test_set = "test";
  }
  return ScaleGames(out, games);
}

ExperimentConfig ScaleGames(const ExperimentConfig& config, std::uint64_t games) {
  if (games == 0 || config.games == 0) {
    throw ConfigError("games", "rescaling needs a positive game count");
  }
  ExperimentConfig out = config;
  const double factor = static_cast<double>(games) / static_cast<double>(config.games);
  out.games = games;
  std::uint64_t previous = 0;
  for (auto& event : out.schedule) {
    event.at = std::min(std::max(Scale(event.at, factor), previous + 1), games);
    previous = event.at;
  }
  for (auto& request : out.evaluations) {
    request.after = std::min(Scale(request.after, factor), games);
    request.games = std::max<std::uint64_t>(Scale(request.games, factor), out.output.window);
  }
  ValidateConfig(out);
  return out;
}

}  // namespace langgame
