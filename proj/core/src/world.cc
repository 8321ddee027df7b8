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

#include "langgame/world.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "langgame/errors.h"

namespace langgame {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

std::vector<std::string_view> SplitRow(std::string_view line, char delimiter) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto end = line.find(delimiter, start);
    cells.push_back(Trim(line.substr(start, end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return cells;
}

std::optional<double> ParseDouble(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string Location(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

}  // namespace

std::vector<EntityId> Dataset::Ids() const {
  std::vector<EntityId> ids(entities.size());
  std::iota(ids.begin(), ids.end(), EntityId{0});
  return ids;
}

Dataset LoadDataset(const std::filesystem::path& path, const TableSchema& schema,
                    ChannelSpace& space, std::string name) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open feature table " + path.string());

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw DataError("empty feature table " + path.string());
  ++line_no;
  const auto header = SplitRow(line, schema.delimiter);

  std::vector<std::size_t> feature_columns;
  std::vector<std::string> feature_names;
  if (!schema.columns.empty()) {
    for (const auto& wanted : schema.columns) {
      auto it = std::find(header.begin(), header.end(), wanted);
      if (it == header.end()) {
        throw DataError("feature table " + path.string() + " has no column '" +
                        wanted + "'");
      }
      feature_columns.push_back(static_cast<std::size_t>(it - header.begin()));
      feature_names.push_back(wanted);
    }
  } else {
    for (const auto& excluded : schema.exclude) {
      if (std::find(header.begin(), header.end(), excluded) == header.end()) {
        throw DataError("feature table " + path.string() +
                        " has no column '" + excluded + "' to exclude");
      }
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string column(header[c]);
      if (std::find(schema.exclude.begin(), schema.exclude.end(), column) !=
          schema.exclude.end()) {
        continue;
      }
      if (column.empty()) {
        throw DataError(Location(path, 1) + ": empty column name at position " +
                        std::to_string(c + 1));
      }
      feature_columns.push_back(c);
      feature_names.push_back(column);
    }
  }
  if (feature_columns.empty()) throw DataError("feature table " + path.string() + " has no feature column");
  if (schema.expected_channels && feature_columns.size() != *schema.expected_channels) {
    throw DataError("feature table " + path.string() + " has " +
                    std::to_string(feature_columns.size()) + " feature columns, expected " +
                    std::to_string(*schema.expected_channels));
  }

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto cells = SplitRow(line, schema.delimiter);
    if (cells.size() != header.size()) {
      throw DataError(Location(path, line_no) + ": expected " +
                      std::to_string(header.size()) + " cells, found " +
                      std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(feature_columns.size());
    for (std::size_t f = 0; f < feature_columns.size(); ++f) {
      auto value = ParseDouble(cells[feature_columns[f]]);
      if (!value) {
        throw DataError(Location(path, line_no) + ": non-numeric value '" +
                        std::string(cells[feature_columns[f]]) + "' in column '" +
                        feature_names[f] + "'");
      }
      row.push_back(*value);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("feature table " + path.string() + " has no data rows");

  Dataset dataset;
  dataset.name = name.empty() ? path.stem().string() : std::move(name);
  for (const auto& column : feature_names) dataset.channels.push_back(space.Intern(column));

  for (std::size_t f = 0; f < feature_names.size(); ++f) {
    double lo = rows[0][f];
    double hi = rows[0][f];
    for (const auto& row : rows) {
      lo = std::min(lo, row[f]);
      hi = std::max(hi, row[f]);
    }
    dataset.normalization.push_back({feature_names[f], lo, hi});
  }

  dataset.entities.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Entity entity{static_cast<EntityId>(r), PerceivedVector(space.size())};
    for (std::size_t f = 0; f < feature_names.size(); ++f) {
      const auto& range = dataset.normalization[f];
      const double width = range.max - range.min;
      entity.features.Set(dataset.channels[f],
                          width > 0.0 ? (rows[r][f] - range.min) / width : 0.0);
    }
    dataset.entities.push_back(std::move(entity));
  }
  return dataset;
}

Dataset GenerateSynthetic(const SyntheticSpec& spec, Rng& rng, ChannelSpace& space,
                          std::string name) {
  if (spec.clusters == 0 || spec.channels == 0 || spec.entities_per_cluster == 0) {
    throw DataError("synthetic dataset needs at least one cluster, channel and entity");
  }
  if (spec.cluster_std < 0.0) throw DataError("synthetic cluster_std must be >= 0");
  Dataset dataset;
  dataset.name = name.empty() ? "synthetic" : std::move(name);
  for (std::size_t c = 0; c < spec.channels; ++c) {
    dataset.channels.push_back(
        space.Intern(spec.channel_prefix + std::to_string(spec.first_channel_index + c)));
  }
  for (std::size_t k = 0; k < spec.clusters; ++k) {
    std::vector<double> centre(spec.channels);
    for (double& v : centre) v = 0.1 + 0.8 * rng.UniformReal();
    for (std::size_t e = 0; e < spec.entities_per_cluster; ++e) {
      Entity entity{static_cast<EntityId>(dataset.entities.size()),
                    PerceivedVector(space.size())};
      for (std::size_t c = 0; c < spec.channels; ++c) {
        double value = centre[c];
        if (spec.cluster_std > 0.0) value = rng.Normal(centre[c], spec.cluster_std);
        entity.features.Set(dataset.channels[c], std::clamp(value, 0.0, 1.0));
      }
      dataset.entities.push_back(std::move(entity));
      dataset.cluster_labels.push_back(static_cast<std::uint32_t>(k));
    }
  }
  return dataset;
}

std::vector<Scene> BuildScenes(std::span<const EntityId> pool, std::size_t count,
                               SizeRange sizes, Rng& rng) {
  if (sizes.min < 1 || sizes.min > sizes.max) {
    throw DataError("invalid scene size range [" + std::to_string(sizes.min) + ", " +
                    std::to_string(sizes.max) + "]");
  }
  if (pool.size() < sizes.max) {
    throw DataError("scene size up to " + std::to_string(sizes.max) + " needs at least " +
                    std::to_string(sizes.max) + " entities, pool has " +
                    std::to_string(pool.size()));
  }
  // Give up after this many consecutive duplicate draws.
  constexpr std::size_t kMaxDuplicateRun = 1000;

  std::vector<Scene> scenes;
  std::set<std::vector<EntityId>> seen;
  std::vector<EntityId> scratch(pool.begin(), pool.end());
  std::size_t duplicates = 0;
  while (scenes.size() < count && duplicates < kMaxDuplicateRun) {
    const auto size = static_cast<std::size_t>(rng.UniformInt(
        static_cast<std::int64_t>(sizes.min), static_cast<std::int64_t>(sizes.max)));
    // Partial Fisher-Yates over the scratch copy of the pool.
    for (std::size_t i = 0; i < size; ++i) {
      const std::size_t j = i + rng.UniformIndex(scratch.size() - i);
      std::swap(scratch[i], scratch[j]);
    }
    std::vector<EntityId> members(scratch.begin(), scratch.begin() + size);
    std::vector<EntityId> key = members;
    std::sort(key.begin(), key.end());
    if (!seen.insert(std::move(key)).second) {
      ++duplicates;
      continue;
    }
    duplicates = 0;
    scenes.push_back(Scene{static_cast<std::uint32_t>(scenes.size()), std::move(members)});
  }
  return scenes;
}

EntitySplit SplitEntities(std::span<const EntityId> ids, double train_fraction,
                          Rng& rng) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw DataError("train fraction must lie strictly between 0 and 1");
  }
  std::vector<EntityId> shuffled(ids.begin(), ids.end());
  for (std::size_t i = shuffled.size(); i > 1; --i) {
    std::swap(shuffled[i - 1], shuffled[rng.UniformIndex(i)]);
  }
  const auto train_size = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(shuffled.size())));
  EntitySplit split;
  split.train.assign(shuffled.begin(), shuffled.begin() + train_size);
  split.test.assign(shuffled.begin() + train_size, shuffled.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

void WriteSceneFile(const std::filesystem::path& path, std::span<const Scene> scenes) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write scene file " + path.string());
  for (const auto& scene : scenes) {
    for (std::size_t i = 0; i < scene.entities.size(); ++i) {
      if (i > 0) out << ',';
      out << scene.entities[i];
    }
    out << '\n';
  }
  if (!out) throw DataError("failed writing scene file " + path.string());
}

std::vector<Scene> ReadSceneFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open scene file " + path.string());
  std::vector<Scene> scenes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    Scene scene{static_cast<std::uint32_t>(scenes.size()), {}};
    for (auto cell : SplitRow(line, ',')) {
      EntityId id = 0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), id);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw DataError(Location(path, line_no) + ": invalid entity id '" +
                        std::string(cell) + "'");
      }
      scene.entities.push_back(id);
    }
    scenes.push_back(std::move(scene));
  }
  if (scenes.empty()) throw DataError("scene file " + path.string() + " is empty");
  return scenes;
}

void ValidateScenes(std::span<const Scene> scenes, const Dataset& dataset) {
  for (const auto& scene : scenes) {
    if (scene.entities.size() < 2) {
      throw DataError("scene " + std::to_string(scene.id) + " has fewer than 2 entities");
    }
    std::vector<EntityId> sorted = scene.entities;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw DataError("scene " + std::to_string(scene.id) + " repeats an entity");
    }
    if (sorted.back() >= dataset.entities.size()) {
      throw DataError("scene " + std::to_string(scene.id) + " references entity " +
                      std::to_string(sorted.back()) + " outside dataset '" +
                      dataset.name + "'");
    }
  }
}

PerceptionProfile MakePerceptionProfile(std::span<const ChannelId> sensors,
                                        double shift_std, double noise_std, Rng& rng) {
  PerceptionProfile profile;
  profile.noise_std = noise_std;
  if (shift_std > 0.0) {
    for (ChannelId id : sensors) profile.shift.Set(id, rng.Normal(0.0, shift_std));
  }
  return profile;
}

PerceivedVector DrawGameNoise(std::span<const ChannelId> sensors, double noise_std,
                              Rng& rng) {
  PerceivedVector noise;
  if (noise_std > 0.0) {
    for (ChannelId id : sensors) noise.Set(id, rng.Normal(0.0, noise_std));
  }
  return noise;
}

PerceivedVector Perceive(std::span<const ChannelId> sensors,
                         const PerceptionProfile& profile,
                         const PerceivedVector& game_noise, const Entity& entity) {
  PerceivedVector perceived(entity.features.width());
  bool any = false;
  for (ChannelId id : sensors) {
    if (!entity.features.Has(id)) continue;
    double value = entity.features[id];
    if (profile.shift.Has(id)) value += profile.shift[id];
    if (game_noise.Has(id)) value += game_noise[id];
    perceived.Set(id, value);
    any = true;
  }
  if (!any) {
    throw ImperceptibleEntity("entity " + std::to_string(entity.id) +
                              " has no channel the agent can sense");
  }
  return perceived;
}

}  // namespace langgame
