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

// Command-line entry point: run, evaluate, scenes, aggregate, presets.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "langgame/checkpoint.h"
#include "langgame/config.h"
#include "langgame/errors.h"
#include "langgame/experiment.h"
#include "langgame/metrics.h"
#include "langgame/presets.h"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;
using namespace langgame;

constexpr int kConfigFailure = 2;
constexpr int kRuntimeFailure = 1;

struct Source {
  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  bool desk_scale = false;
  std::optional<std::uint64_t> games;

  void AddTo(CLI::App* app) {
    auto* config = app->add_option("--config", config_path, "Experiment config (JSON)");
    auto* name = app->add_option("--preset", preset, "Use a built-in preset instead of a config");
    config->excludes(name);
    app->add_option("--seed", seed, "Override the master seed");
    app->add_flag("--desk-scale", desk_scale,
                  "Replace tables by synthetic data and shrink the game count");
    app->add_option("--games", games, "Override the number of training games");
  }

  ExperimentConfig Load() const {
    if (config_path.empty() && preset.empty()) {
      throw ConfigError("<cli>", "one of --config or --preset is required");
    }
    ExperimentConfig config = preset.empty() ? LoadConfig(config_path) : Preset(preset);
    if (seed) config.seed = *seed;
    if (desk_scale) {
      config = DeskScale(config, games.value_or(100000));
    } else if (games) {
      config = ScaleGames(config, *games);
    }
    return config;
  }
};

int Run(const Source& source, const std::string& out, std::optional<std::size_t> repetitions,
        std::size_t jobs, bool no_records, const std::string& sweep) {
  ExperimentConfig config = source.Load();
  if (repetitions) config.repetitions = *repetitions;
  if (no_records) config.output.records = false;
  ValidateConfig(config);

  std::vector<ExperimentConfig> configs;
  if (sweep.empty()) {
    configs.push_back(config);
  } else {
    for (const auto& variant : ExpandSweep(ConfigToJson(config), ReadJsonFile(sweep))) {
      configs.push_back(ParseConfig(json::parse(variant.dump())));
    }
  }
  for (const auto& c : configs) {
    const fs::path dir = configs.size() == 1 ? fs::path(out) : fs::path(out) / c.name;
    const ordered_json aggregate = RunAll(c, dir, jobs);
    std::cout << c.name << " -> " << dir.string() << '\n';
    for (const auto& [key, stats] : aggregate["metrics"].items()) {
      if (key.find("final_window") == std::string::npos) continue;
      std::cout << "  " << key << " = " << stats["mean"].get<double>() << " +- "
                << stats["two_std"].get<double>() << '\n';
    }
  }
  return 0;
}

int EvaluateCommand(const Source& source, const std::string& checkpoint,
                    const std::string& dataset_name, const std::string& test_set,
                    const std::string& scene_file, std::uint64_t games, std::size_t run,
                    const std::string& out) {
  const ExperimentConfig config = source.Load();
  const DatasetConfig* dataset = config.FindDataset(dataset_name.empty() ? config.initial_dataset
                                                                         : dataset_name);
  if (dataset == nullptr) throw ConfigError("--dataset", "unknown dataset '" + dataset_name + "'");
  Population population = LoadCheckpoint(checkpoint);
  const std::uint64_t run_seed = RunSeed(config.seed, run);
  World world = BuildWorld(config, run_seed, population.channels);
  population.channels = world.channels;
  const SceneBank& bank = world.banks.at(dataset->name);

  std::vector<Scene> scenes;
  if (!scene_file.empty()) {
    scenes = ReadSceneFile(scene_file);
    ValidateScenes(scenes, bank.dataset);
  } else {
    auto it = bank.test_sets.find(test_set);
    if (it == bank.test_sets.end()) {
      throw ConfigError("--test-set", "dataset '" + dataset->name + "' has no test set '" +
                                          test_set + "'");
    }
    scenes = it->second;
  }
  if (scenes.empty()) throw DataError("no scenes to evaluate on");
  const EvaluationResult result =
      Evaluate(population, {&bank.dataset, scenes}, games,
               Rng::DeriveSeed(run_seed, "evaluate-cli"), config.output.window);
  ordered_json summary;
  summary["dataset"] = dataset->name;
  summary["games"] = games;
  summary["final_window"] = SnapshotToJson(result.final_window);
  summary["overall"] = SnapshotToJson(result.overall);
  if (out.empty()) {
    std::cout << summary.dump(2) << '\n';
  } else {
    WriteJsonFile(summary, out);
  }
  return 0;
}

int ScenesCommand(const Source& source, std::size_t run, const std::string& out) {
  const ExperimentConfig config = source.Load();
  const std::uint64_t run_seed = RunSeed(config.seed, run);
  const World world = BuildWorld(config, run_seed);
  fs::create_directories(out);
  for (const auto& [name, bank] : world.banks) {
    WriteSceneFile(fs::path(out) / (name + "_train_scenes.txt"), bank.train);
    for (const auto& [test, scenes] : bank.test_sets) {
      WriteSceneFile(fs::path(out) / (name + "_" + test + "_scenes.txt"), scenes);
    }
  }
  WriteJsonFile(world.manifest, fs::path(out) / "manifest.json");
  std::cout << "scenes written to " << out << '\n';
  return 0;
}

int AggregateCommand(const std::vector<std::string>& inputs, const std::string& out) {
  std::vector<json> metrics;
  for (const auto& input : inputs) {
    fs::path path = input;
    if (fs::is_directory(path)) path /= "summary.json";
    metrics.push_back(SummaryMetrics(ReadJsonFile(path)));
  }
  ordered_json aggregate;
  aggregate["runs"] = metrics.size();
  aggregate["metrics"] = AggregateSummaries(metrics);
  if (out.empty()) {
    std::cout << aggregate.dump(2) << '\n';
    return 0;
  }
  fs::create_directories(out);
  WriteJsonFile(aggregate, fs::path(out) / "aggregate.json");
  WriteAggregateTable(aggregate["metrics"], fs::path(out) / "aggregate.csv");
  return 0;
}

int PresetsCommand(const std::vector<std::string>& names, bool desk_scale,
                   std::optional<std::uint64_t> games, const std::string& out) {
  if (names.empty()) {
    for (const auto& name : PresetNames()) std::cout << name << '\n';
    return 0;
  }
  if (!out.empty()) fs::create_directories(out);
  for (const auto& name : names) {
    ExperimentConfig config = Preset(name);
    if (desk_scale) config = DeskScale(config, games.value_or(100000));
    const ordered_json document = ConfigToJson(config);
    if (out.empty()) {
      std::cout << document.dump(2) << '\n';
    } else {
      WriteJsonFile(document, fs::path(out) / (name + ".json"));
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Language games over continuous feature datasets"};
  app.require_subcommand(1);

  Source run_source;
  std::string run_out = "out";
  std::optional<std::size_t> repetitions;
  std::size_t jobs = 0;
  bool no_records = false;
  std::string sweep;
  auto* run = app.add_subcommand("run", "Train a population and write records, series, summary "
                                        "and checkpoint");
  run_source.AddTo(run);
  run->add_option("--out", run_out, "Output directory")->capture_default_str();
  run->add_option("--repetitions", repetitions, "Number of independent runs");
  run->add_option("--jobs", jobs, "Runs executed in parallel (0: all cores)");
  run->add_flag("--no-records", no_records, "Do not write records.jsonl");
  run->add_option("--sweep", sweep,
                  "JSON object mapping dotted config paths to value lists; one experiment "
                  "per combination");

  Source eval_source;
  std::string checkpoint, dataset, test_set = "test", scene_file, eval_out;
  std::uint64_t eval_games = 100000;
  std::size_t eval_run = 0;
  auto* evaluate = app.add_subcommand("evaluate", "Frozen evaluation of a saved population");
  eval_source.AddTo(evaluate);
  evaluate->add_option("--checkpoint", checkpoint, "Population checkpoint")->required();
  evaluate->add_option("--dataset", dataset, "Dataset to evaluate on (default: initial)");
  evaluate->add_option("--test-set", test_set, "Named test set of the dataset")
      ->capture_default_str();
  evaluate->add_option("--scenes", scene_file, "Scene file to evaluate on instead");
  evaluate->add_option("--eval-games", eval_games, "Number of evaluation games")
      ->capture_default_str();
  evaluate->add_option("--run", eval_run, "Repetition whose data split to rebuild")
      ->capture_default_str();
  evaluate->add_option("--out", eval_out, "Write the summary here instead of stdout");

  Source scenes_source;
  std::size_t scenes_run = 0;
  std::string scenes_out = "scenes";
  auto* scenes = app.add_subcommand("scenes", "Build train/test splits and write scene files");
  scenes_source.AddTo(scenes);
  scenes->add_option("--run", scenes_run, "Repetition whose split to build")->capture_default_str();
  scenes->add_option("--out", scenes_out, "Output directory")->capture_default_str();

  std::vector<std::string> inputs;
  std::string aggregate_out;
  auto* aggregate = app.add_subcommand("aggregate", "Mean and two standard deviations over runs");
  aggregate->add_option("summaries", inputs, "summary.json files or run directories")
      ->required();
  aggregate->add_option("--out", aggregate_out, "Directory for aggregate.json/.csv");

  std::vector<std::string> preset_names;
  bool preset_desk = false;
  std::optional<std::uint64_t> preset_games;
  std::string preset_out;
  auto* presets = app.add_subcommand("presets", "List presets or print their configs");
  presets->add_option("names", preset_names, "Presets to emit (none: list all)");
  presets->add_flag("--desk-scale", preset_desk, "Emit the desk-scale variant");
  presets->add_option("--games", preset_games, "Game count for --desk-scale");
  presets->add_option("--out", preset_out, "Write <name>.json files here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return Run(run_source, run_out, repetitions, jobs, no_records, sweep);
    if (*evaluate) {
      return EvaluateCommand(eval_source, checkpoint, dataset, test_set, scene_file, eval_games,
                             eval_run, eval_out);
    }
    if (*scenes) return ScenesCommand(scenes_source, scenes_run, scenes_out);
    if (*aggregate) return AggregateCommand(inputs, aggregate_out);
    if (*presets) return PresetsCommand(preset_names, preset_desk, preset_games, preset_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return 0;
}
