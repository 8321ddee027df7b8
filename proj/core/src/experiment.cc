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

#include "langgame/experiment.h"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "langgame/checkpoint.h"
#include "langgame/errors.h"
#include "langgame/metrics.h"
#include "langgame/record.h"

namespace langgame {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::filesystem::path Resolve(const std::filesystem::path& base,
                              const std::filesystem::path& path) {
  if (path.is_absolute() || base.empty()) return path;
  return base / path;
}

std::set<EntityId> EntitiesOf(const std::vector<Scene>& scenes) {
  std::set<EntityId> out;
  for (const auto& scene : scenes) out.insert(scene.entities.begin(), scene.entities.end());
  return out;
}

std::string DatasetField(std::size_t index, const std::string& rest) {
  return "datasets[" + std::to_string(index) + "]." + rest;
}

}  // namespace

std::uint64_t RunSeed(std::uint64_t master_seed, std::size_t index) {
  return Rng::DeriveSeed(master_seed, "run", index);
}

World BuildWorld(const ExperimentConfig& config, std::uint64_t run_seed, ChannelSpace channels,
                 const std::filesystem::path& base_dir) {
  World world{std::move(channels), {}, {}};
  ordered_json datasets = ordered_json::array();
  for (std::size_t i = 0; i < config.datasets.size(); ++i) {
    const DatasetConfig& spec = config.datasets[i];
    ordered_json entry;
    entry["name"] = spec.name;
    SceneBank bank;

    if (spec.source.type == DatasetSource::Type::kTable) {
      const auto path = Resolve(base_dir, spec.source.path);
      bank.dataset = LoadDataset(path, spec.source.schema, world.channels, spec.name);
      entry["source"] = path.generic_string();
    } else {
      const std::uint64_t seed =
          spec.source.seed.value_or(Rng::DeriveSeed(run_seed, "dataset", i));
      Rng rng(seed);
      bank.dataset = GenerateSynthetic(spec.source.synthetic, rng, world.channels, spec.name);
      entry["source"] = "synthetic";
      entry["data_seed"] = seed;
    }
    const std::size_t size = bank.dataset.entities.size();
    entry["entities"] = size;
    ordered_json names = ordered_json::array();
    for (ChannelId id : bank.dataset.channels) names.push_back(world.channels.Name(id));
    entry["channels"] = names;
    ordered_json normalization = ordered_json::array();
    for (const auto& range : bank.dataset.normalization) {
      normalization.push_back({{"channel", range.channel}, {"min", range.min}, {"max", range.max}});
    }
    entry["normalization"] = normalization;

    const SplitConfig& split = spec.split;
    if (split.scene_size.max > size) {
      throw ConfigError(DatasetField(i, "split.scene_size"),
                        "maximum scene size " + std::to_string(split.scene_size.max) +
                            " exceeds the dataset size " + std::to_string(size));
    }
    if (split.train_scene_file) {
      const auto train_path = Resolve(base_dir, *split.train_scene_file);
      bank.train = ReadSceneFile(train_path);
      ValidateScenes(bank.train, bank.dataset);
      const std::set<EntityId> train_entities = EntitiesOf(bank.train);
      entry["train_scene_file"] = train_path.generic_string();
      for (const auto& [name, file] : split.test_scene_files) {
        const auto test_path = Resolve(base_dir, file);
        std::vector<Scene> scenes = ReadSceneFile(test_path);
        ValidateScenes(scenes, bank.dataset);
        for (EntityId id : EntitiesOf(scenes)) {
          if (train_entities.contains(id)) {
            throw DataError("entity " + std::to_string(id) + " occurs in training scenes and in " +
                            test_path.string());
          }
        }
        bank.test_sets[name] = std::move(scenes);
      }
    } else {
      Rng split_rng = Rng::Substream(run_seed, "split", i);
      const std::vector<EntityId> ids = bank.dataset.Ids();
      const EntitySplit parts = SplitEntities(ids, split.train_fraction, split_rng);
      if (parts.train.size() < split.scene_size.max) {
        throw ConfigError(DatasetField(i, "split"),
                          "the training side has " + std::to_string(parts.train.size()) +
                              " entities, fewer than the maximum scene size");
      }
      Rng train_rng = Rng::Substream(run_seed, "train-scenes", i);
      bank.train = BuildScenes(parts.train, split.train_scenes, split.scene_size, train_rng);
      std::vector<Scene> test;
      if (split.test_scenes > 0) {
        if (parts.test.size() < split.scene_size.max) {
          throw ConfigError(DatasetField(i, "split"),
                            "the test side has " + std::to_string(parts.test.size()) +
                                " entities, fewer than the maximum scene size");
        }
        Rng test_rng = Rng::Substream(run_seed, "test-scenes", i);
        test = BuildScenes(parts.test, split.test_scenes, split.scene_size, test_rng);
      }
      bank.test_sets["test"] = std::move(test);
      entry["train_entities"] = parts.train.size();
      entry["test_entities"] = parts.test.size();
    }
    entry["train_scenes"] = bank.train.size();
    ordered_json test_counts = ordered_json::object();
    for (const auto& [name, scenes] : bank.test_sets) test_counts[name] = scenes.size();
    entry["test_scenes"] = test_counts;
    datasets.push_back(entry);
    world.banks.emplace(spec.name, std::move(bank));
  }
  world.manifest["run_seed"] = run_seed;
  world.manifest["channels"] = world.channels.names();
  world.manifest["datasets"] = datasets;
  return world;
}

RunOutcome RunOnce(const ExperimentConfig& config, std::uint64_t run_seed,
                   const std::filesystem::path& out_dir, const std::filesystem::path& base_dir) {
  ValidateConfig(config);
  World world = BuildWorld(config, run_seed, {}, base_dir);
  for (std::size_t i = 0; i < config.evaluations.size(); ++i) {
    const auto& request = config.evaluations[i];
    if (world.banks.at(request.dataset).test_sets.at(request.test_set).empty()) {
      throw ConfigError("evaluations[" + std::to_string(i) + "]",
                        "test set '" + request.test_set + "' of dataset '" + request.dataset +
                            "' holds no scenes");
    }
  }

  const std::uint64_t population_seed = Rng::DeriveSeed(run_seed, "population");
  const std::uint64_t game_seed = Rng::DeriveSeed(run_seed, "games");
  RunOutcome outcome{CreatePopulation(world.channels, config.population_size, config.sensors,
                                      config.perception, config.learning, population_seed),
                     {},
                     {}};

  const bool write = !out_dir.empty();
  std::ofstream records;
  std::optional<SeriesWriter> series;
  MetricsTracker tracker(config.population_size, config.output.window);
  if (write) {
    std::filesystem::create_directories(out_dir);
    ordered_json manifest;
    manifest["name"] = config.name;
    manifest["config"] = ConfigToJson(config);
    manifest["seeds"] = {{"run", run_seed}, {"population", population_seed}, {"games", game_seed}};
    manifest["record_schema_version"] = kRecordSchemaVersion;
    manifest["world"] = world.manifest;
    WriteJsonFile(manifest, out_dir / "manifest.json");
    if (config.output.records) {
      records.open(out_dir / "records.jsonl", std::ios::binary);
      if (!records) throw DataError("cannot write " + (out_dir / "records.jsonl").string());
    }
    series.emplace(out_dir / "series.csv", config.output.series_stride);
  }

  RunPlan plan;
  plan.schedule = {config.games, config.schedule};
  plan.evaluations = config.evaluations;
  plan.initial_dataset = config.initial_dataset;
  plan.seed = game_seed;
  plan.window = config.output.window;
  RunCallbacks callbacks;
  if (write) {
    callbacks.on_record = [&](const GameRecord& record) {
      if (records.is_open()) records << RecordToJson(record).dump() << '\n';
      tracker.Observe(record);
      series->Observe(record, tracker);
    };
  }
  outcome.result = RunExperiment(outcome.population, world.banks, plan, callbacks);

  ordered_json training;
  training["games"] = config.games;
  training["final_window"] = SnapshotToJson(outcome.result.final_window);
  training["peak_inventory_size"] = outcome.result.peak_inventory_size
                                        ? ordered_json(*outcome.result.peak_inventory_size)
                                        : ordered_json(nullptr);
  ordered_json evaluations = ordered_json::object();
  for (const auto& evaluation : outcome.result.evaluations) {
    evaluations[evaluation.label] = {{"after", evaluation.after},
                                     {"games", evaluation.games},
                                     {"final_window", SnapshotToJson(evaluation.final_window)},
                                     {"overall", SnapshotToJson(evaluation.overall)}};
  }
  outcome.summary["name"] = config.name;
  outcome.summary["run_seed"] = run_seed;
  outcome.summary["metrics"] = {{"training", training}, {"evaluations", evaluations}};

  if (write) {
    if (records.is_open()) {
      records.flush();
      if (!records) throw DataError("failed writing " + (out_dir / "records.jsonl").string());
    }
    series->Close();
    WriteJsonFile(outcome.summary, out_dir / "summary.json");
    if (config.output.checkpoint) SaveCheckpoint(outcome.population, out_dir / "checkpoint.json");
  }
  return outcome;
}

ordered_json RunAll(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                    std::size_t jobs, const std::filesystem::path& base_dir) {
  ValidateConfig(config);
  const std::size_t runs = config.repetitions;
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, runs);

  std::vector<json> summaries(runs);
  std::vector<std::exception_ptr> failures(runs);
  std::mutex mutex;
  std::size_t next = 0;
  auto worker = [&] {
    while (true) {
      std::size_t index;
      {
        std::lock_guard<std::mutex> lock(mutex);
        if (next == runs) return;
        index = next++;
      }
      try {
        char name[32];
        std::snprintf(name, sizeof(name), "run-%03zu", index);
        RunOutcome outcome = RunOnce(config, RunSeed(config.seed, index), out_dir / name, base_dir);
        summaries[index] = json::parse(outcome.summary.dump());
      } catch (...) {
        failures[index] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (auto& thread : threads) thread.join();
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<json> metrics;
  for (const auto& summary : summaries) metrics.push_back(SummaryMetrics(summary));
  ordered_json aggregate;
  aggregate["name"] = config.name;
  aggregate["runs"] = runs;
  aggregate["metrics"] = AggregateSummaries(metrics);
  std::filesystem::create_directories(out_dir);
  WriteJsonFile(aggregate, out_dir / "aggregate.json");
  WriteAggregateTable(aggregate["metrics"], out_dir / "aggregate.csv");
  return aggregate;
}

const json& SummaryMetrics(const json& summary) {
  auto it = summary.find("metrics");
  return it != summary.end() && it->is_object() ? *it : summary;
}

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + " is not valid JSON: " + e.what());
  }
}

void WriteJsonFile(const ordered_json& value, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << value.dump(2) << '\n';
  if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace langgame
