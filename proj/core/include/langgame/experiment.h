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

// End-to-end runs: datasets and scenes from a config, one seeded run with its
// output files, and batches of repetitions with aggregated summaries.
//
// A run directory holds
//   manifest.json   config, seeds, channel names, normalization constants and
//                   scene counts
//   records.jsonl   one game record per line (when output.records is set)
//   series.csv      windowed metrics every output.series_stride games
//   summary.json    final training window and every evaluation
//   checkpoint.json final population (when output.checkpoint is set)

#ifndef LANGGAME_EXPERIMENT_H_
#define LANGGAME_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "langgame/config.h"
#include "langgame/game.h"

namespace langgame {

struct World {
  ChannelSpace channels;
  std::map<std::string, SceneBank> banks;
  nlohmann::ordered_json manifest;
};

// Loads or generates every dataset, splits it and builds (or reads) its
// scenes. Channels are interned into `channels`, so a checkpoint's namespace
// can be passed in to keep its ids. Relative paths resolve against
// `base_dir`. Throws ConfigError or DataError.
World BuildWorld(const ExperimentConfig& config, std::uint64_t run_seed,
                 ChannelSpace channels = {}, const std::filesystem::path& base_dir = {});

// Seed of repetition `index` of an experiment.
std::uint64_t RunSeed(std::uint64_t master_seed, std::size_t index);

struct RunOutcome {
  Population population;
  RunResult result;
  nlohmann::ordered_json summary;
};

// Plays one run and writes its files into `out_dir` (created if needed).
// With an empty `out_dir` nothing is written.
RunOutcome RunOnce(const ExperimentConfig& config, std::uint64_t run_seed,
                   const std::filesystem::path& out_dir,
                   const std::filesystem::path& base_dir = {});

// Runs config.repetitions runs into out_dir/run-000, run-001, ... using up to
// `jobs` threads (0 picks the hardware concurrency), then writes
// aggregate.json and aggregate.csv. Returns the aggregate.
nlohmann::ordered_json RunAll(const ExperimentConfig& config,
                              const std::filesystem::path& out_dir, std::size_t jobs = 0,
                              const std::filesystem::path& base_dir = {});

// The part of a summary that is averaged across runs.
const nlohmann::json& SummaryMetrics(const nlohmann::json& summary);

nlohmann::json ReadJsonFile(const std::filesystem::path& path);
void WriteJsonFile(const nlohmann::ordered_json& json, const std::filesystem::path& path);

}  // namespace langgame

#endif  // LANGGAME_EXPERIMENT_H_
