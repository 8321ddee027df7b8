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

// One language game, sequences of games with scheduled perturbations, and
// frozen evaluation.
//
// A game: a random scene, an ordered random speaker/listener pair and a random
// topic are drawn; both agents perceive the scene through their own sensors;
// the speaker produces (or invents) a word; the listener points at the entity
// that best matches the word or signals it does not know it; the outcome is
// revealed and, when learning is on, both agents align.

#ifndef LANGGAME_GAME_H_
#define LANGGAME_GAME_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "langgame/agent.h"
#include "langgame/channel.h"
#include "langgame/metrics.h"
#include "langgame/random.h"
#include "langgame/record.h"
#include "langgame/world.h"

namespace langgame {

struct Population {
  ChannelSpace channels;
  std::vector<Agent> agents;
};

// How sensors are handed out when the population is created.
struct SensorEndowment {
  enum class Mode {
    kAll,           // every channel of the space
    kRandom,        // `count` random channels, drawn per agent
    kRandomShared,  // `count` random channels, one draw shared by all agents
    kExplicit,      // `lists[i]` for agent i
  };
  Mode mode = Mode::kAll;
  std::size_t count = 0;
  std::vector<std::vector<std::string>> lists;
};

struct PerceptionSettings {
  double shift_std = 0.0;
  double noise_std = 0.0;
};

// Agents start with empty inventories. Every random choice is drawn from
// substreams of `seed`.
Population CreatePopulation(ChannelSpace channels, std::size_t size,
                            const SensorEndowment& endowment,
                            const PerceptionSettings& perception,
                            const LearningParams& params, std::uint64_t seed);

// Scenes to draw from, with the dataset their entity ids refer to.
struct SceneSource {
  const Dataset* dataset = nullptr;
  std::span<const Scene> scenes;
};

// Independent random streams of one run (or one evaluation).
struct GameStreams {
  Rng scenes;
  Rng pairs;
  Rng topics;
  std::vector<Rng> noise;  // one per agent

  static GameStreams Derive(std::uint64_t seed, std::size_t population_size);
};

// Plays one game. With `learning` off nothing in the population changes and a
// speaker without candidates stays silent (a failed game).
GameRecord PlayGame(Population& population, const SceneSource& source,
                    GameStreams& streams, bool learning, std::uint64_t game_index);

struct ScheduleEvent {
  enum class Kind { kSensorDefect, kSwitchDataset, kFreezeLearning, kUnfreezeLearning };
  // Applied once game `at` has been played.
  std::uint64_t at = 0;
  Kind kind = Kind::kFreezeLearning;
  std::size_t lost_per_agent = 0;  // kSensorDefect
  std::string dataset;             // kSwitchDataset
};

struct Schedule {
  std::uint64_t total_games = 0;
  std::vector<ScheduleEvent> events;

  // Event indices must be strictly increasing and within [1, total_games].
  // Throws ConfigError.
  void Validate() const;
};

// Each agent loses `lost_per_agent` sensors, chosen uniformly without
// replacement with the agent's own random stream.
void ApplySensorDefect(Population& population, std::size_t lost_per_agent);

struct EvaluationResult {
  std::string label;
  std::uint64_t after = 0;
  std::uint64_t games = 0;
  MetricsSnapshot final_window;
  MetricsSnapshot overall;
};

// Frozen evaluation on a copy of the population; `population` is untouched.
EvaluationResult Evaluate(const Population& population, const SceneSource& test,
                          std::uint64_t games, std::uint64_t seed,
                          std::size_t window = kDefaultWindow,
                          const std::function<void(const GameRecord&)>& on_record = {});

// Training and test scenes of one dataset.
struct SceneBank {
  Dataset dataset;
  std::vector<Scene> train;
  std::map<std::string, std::vector<Scene>> test_sets;
};

struct EvaluationRequest {
  // Runs once game `after` has been played, before any event at that index.
  std::uint64_t after = 0;
  std::string dataset;
  std::string test_set = "test";
  std::uint64_t games = 0;
  std::string label;
};

struct RunPlan {
  Schedule schedule;
  std::vector<EvaluationRequest> evaluations;
  std::string initial_dataset;
  std::uint64_t seed = 0;
  std::size_t window = kDefaultWindow;
};

struct RunCallbacks {
  std::function<void(const GameRecord&)> on_record;
  std::function<void(const EvaluationResult&)> on_evaluation;
};

struct RunResult {
  std::vector<EvaluationResult> evaluations;
  MetricsSnapshot final_window;
  std::optional<double> peak_inventory_size;
};

// Plays the whole plan on `population`: games are sequential, evaluations and
// schedule events fire after their game index. Throws ConfigError for plans
// that reference unknown datasets or test sets before playing anything.
RunResult RunExperiment(Population& population,
                        const std::map<std::string, SceneBank>& world,
                        const RunPlan& plan, const RunCallbacks& callbacks = {});

}  // namespace langgame

#endif  // LANGGAME_GAME_H_
