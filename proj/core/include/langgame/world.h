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

// Datasets, scenes, entity splits and the perception pipeline.

#ifndef LANGGAME_WORLD_H_
#define LANGGAME_WORLD_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "langgame/channel.h"
#include "langgame/random.h"

namespace langgame {

using EntityId = std::uint32_t;

struct Entity {
  EntityId id = 0;
  // Objective feature vector; values are normalized to [0, 1].
  PerceivedVector features;
};

struct NormalizationRange {
  std::string channel;
  double min = 0.0;
  double max = 0.0;
};

struct Dataset {
  std::string name;
  std::vector<ChannelId> channels;
  // entities[i].id == i.
  std::vector<Entity> entities;
  // Raw min/max per channel, in `channels` order. Empty for synthetic data.
  std::vector<NormalizationRange> normalization;
  // Generating cluster of each entity for synthetic data; diagnostics only.
  std::vector<std::uint32_t> cluster_labels;

  const Entity& at(EntityId id) const { return entities.at(id); }
  std::vector<EntityId> Ids() const;
};

// How to read a delimited feature table. With no `columns`, every column not
// listed in `exclude` is a feature channel.
struct TableSchema {
  char delimiter = ',';
  std::vector<std::string> columns;
  std::vector<std::string> exclude;
  // When set, loading fails unless exactly this many feature columns result.
  std::optional<std::size_t> expected_channels;
};

// Reads a feature table with a header row, registers its channels in `space`
// and min-max normalizes every channel to [0, 1] over the whole table (a
// constant column maps to 0). Throws DataError with row/column context.
Dataset LoadDataset(const std::filesystem::path& path, const TableSchema& schema,
                    ChannelSpace& space, std::string name = {});

struct SyntheticSpec {
  std::size_t clusters = 8;
  std::size_t channels = 5;
  std::size_t entities_per_cluster = 100;
  double cluster_std = 0.03;
  // Channels are named prefix + index, starting at first_channel_index.
  std::string channel_prefix = "c";
  std::size_t first_channel_index = 1;
};

// Gaussian clusters with centres drawn uniformly from [0.1, 0.9] per channel,
// values clipped to [0, 1]. Entities are emitted cluster by cluster.
Dataset GenerateSynthetic(const SyntheticSpec& spec, Rng& rng, ChannelSpace& space,
                          std::string name = {});

struct Scene {
  std::uint32_t id = 0;
  std::vector<EntityId> entities;

  friend bool operator==(const Scene&, const Scene&) = default;
};

struct SizeRange {
  std::size_t min = 3;
  std::size_t max = 10;
};

// Scenes of uniformly random size in `sizes`, entities drawn without
// replacement. Scenes with the same entity set are generated at most once, so
// fewer than `count` scenes come back when the pool cannot supply them.
std::vector<Scene> BuildScenes(std::span<const EntityId> pool, std::size_t count,
                               SizeRange sizes, Rng& rng);

struct EntitySplit {
  std::vector<EntityId> train;
  std::vector<EntityId> test;
};

// Random disjoint partition; the train side receives round(n * fraction)
// entities.
EntitySplit SplitEntities(std::span<const EntityId> ids, double train_fraction,
                          Rng& rng);

// Scene files hold one scene per line as comma-separated entity ids. Scene ids
// are line numbers starting at 0.
void WriteSceneFile(const std::filesystem::path& path, std::span<const Scene> scenes);
std::vector<Scene> ReadSceneFile(const std::filesystem::path& path);
// Fails when a scene references an entity outside the dataset or repeats one.
void ValidateScenes(std::span<const Scene> scenes, const Dataset& dataset);

// Per-agent sensor calibration and observation noise.
struct PerceptionProfile {
  // Constant offset per sensor; absent channels have no offset.
  PerceivedVector shift;
  double noise_std = 0.0;

  friend bool operator==(const PerceptionProfile&, const PerceptionProfile&) = default;
};

// Draws one calibration offset per sensor from Normal(0, shift_std).
PerceptionProfile MakePerceptionProfile(std::span<const ChannelId> sensors,
                                        double shift_std, double noise_std, Rng& rng);

// Noise offsets for one agent for one game: one Normal(0, noise_std) draw per
// sensor, shared by every entity of the scene. Empty when noise_std is 0.
PerceivedVector DrawGameNoise(std::span<const ChannelId> sensors, double noise_std,
                              Rng& rng);

// Projects `entity` onto the sensors and applies calibration shift and the
// game's noise offsets. Values are not clamped. Throws ImperceptibleEntity if
// no sensor observes the entity.
PerceivedVector Perceive(std::span<const ChannelId> sensors,
                         const PerceptionProfile& profile,
                         const PerceivedVector& game_noise, const Entity& entity);

}  // namespace langgame

#endif  // LANGGAME_WORLD_H_
