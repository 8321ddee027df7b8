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

// Ready-made experiment configurations and a transform that shrinks any
// configuration to a size that runs in minutes on synthetic data.

#ifndef LANGGAME_PRESETS_H_
#define LANGGAME_PRESETS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "langgame/config.h"

namespace langgame {

std::vector<std::string> PresetNames();

// Throws ConfigError for unknown names. Table paths are relative to the
// working directory (data/...).
ExperimentConfig Preset(const std::string& name);

// Rescales the game count to `games`: schedule events and evaluation points
// keep their relative position and evaluation lengths change by the same
// factor (never below one metrics window).
ExperimentConfig ScaleGames(const ExperimentConfig& config, std::uint64_t games);

// Replaces every table dataset by a synthetic one with the same number of
// channels (8 clusters of 100 entities, channels named "<dataset>.f<i>"),
// replaces external scene files by a random split whose single test set
// stands in for every named test set, then applies ScaleGames.
ExperimentConfig DeskScale(const ExperimentConfig& config, std::uint64_t games);

}  // namespace langgame

#endif  // LANGGAME_PRESETS_H_
