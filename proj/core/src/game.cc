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

#include "langgame/game.h"

#include <algorithm>

#include "langgame/errors.h"

namespace langgame {
namespace {

std::vector<ChannelId> DrawChannels(const std::vector<ChannelId>& from, std::size_t count,
                                    Rng& rng) {
  std::vector<ChannelId> pool = from;
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(pool[i], pool[i + rng.UniformIndex(pool.size() - i)]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

// One agent's view of a scene.
struct SceneView {
  std::vector<PerceivedVector> entities;
  std::vector<PerceivedVector> context;  // entities without the topic

  const PerceivedVector& topic(std::size_t index) const { return entities[index]; }
};

SceneView Observe(const Agent& agent, const Dataset& dataset, const Scene& scene,
                  std::size_t topic, Rng& noise_rng) {
  const PerceivedVector noise =
      DrawGameNoise(agent.sensors(), agent.perception().noise_std, noise_rng);
  SceneView view;
  view.entities.reserve(scene.entities.size());
  view.context.reserve(scene.entities.size() - 1);
  for (std::size_t e = 0; e < scene.entities.size(); ++e) {
    view.entities.push_back(agent.Perceive(dataset.at(scene.entities[e]), noise));
    if (e != topic) view.context.push_back(view.entities.back());
  }
  return view;
}

}  // namespace

Population CreatePopulation(ChannelSpace channels, std::size_t size,
                            const SensorEndowment& endowment,
                            const PerceptionSettings& perception,
                            const LearningParams& params, std::uint64_t seed) {
  if (size < 2) throw ConfigError("population.size", "a population needs at least 2 agents");
  const std::vector<ChannelId> all = channels.All();
  if (all.empty()) throw ConfigError("population.sensors", "the channel space is empty");

  using Mode = SensorEndowment::Mode;
  if ((endowment.mode == Mode::kRandom || endowment.mode == Mode::kRandomShared) &&
      (endowment.count == 0 || endowment.count > all.size())) {
    throw ConfigError("population.sensors.count",
                      "must lie in [1, " + std::to_string(all.size()) + "]");
  }
  if (endowment.mode == Mode::kExplicit && endowment.lists.size() != size) {
    throw ConfigError("population.sensors.lists",
                      "expected one sensor list per agent (" + std::to_string(size) + ")");
  }

  Rng sensor_rng = Rng::Substream(seed, "sensors");
  std::vector<ChannelId> shared;
  if (endowment.mode == Mode::kRandomShared) {
    shared = DrawChannels(all, endowment.count, sensor_rng);
  }

  Population population{std::move(channels), {}};
  population.agents.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    std::vector<ChannelId> sensors;
    switch (endowment.mode) {
      case Mode::kAll:
        sensors = all;
        break;
      case Mode::kRandom:
        sensors = DrawChannels(all, endowment.count, sensor_rng);
        break;
      case Mode::kRandomShared:
        sensors = shared;
        break;
      case Mode::kExplicit:
        for (const auto& name : endowment.lists[i]) {
          auto id = population.channels.Find(name);
          if (!id) {
            throw ConfigError("population.sensors.lists[" + std::to_string(i) + "]",
                              "unknown channel '" + name + "'");
          }
          sensors.push_back(*id);
        }
        if (sensors.empty()) {
          throw ConfigError("population.sensors.lists[" + std::to_string(i) + "]",
                            "an agent needs at least one sensor");
        }
        break;
    }
    std::sort(sensors.begin(), sensors.end());
    Rng shift_rng = Rng::Substream(seed, "shift", i);
    PerceptionProfile profile = MakePerceptionProfile(sensors, perception.shift_std,
                                                      perception.noise_std, shift_rng);
    population.agents.emplace_back(static_cast<AgentId>(i), std::move(sensors),
                                   std::move(profile), Rng::Substream(seed, "agent", i),
                                   params);
  }
  return population;
}

GameStreams GameStreams::Derive(std::uint64_t seed, std::size_t population_size) {
  GameStreams streams{Rng::Substream(seed, "scenes"), Rng::Substream(seed, "pairs"),
                      Rng::Substream(seed, "topics"), {}};
  streams.noise.reserve(population_size);
  for (std::size_t i = 0; i < population_size; ++i) {
    streams.noise.push_back(Rng::Substream(seed, "noise", i));
  }
  return streams;
}

GameRecord PlayGame(Population& population, const SceneSource& source,
                    GameStreams& streams, bool learning, std::uint64_t game_index) {
  if (population.agents.size() < 2) {
    throw std::invalid_argument("a game needs at least two agents");
  }
  if (source.dataset == nullptr || source.scenes.empty()) {
    throw std::invalid_argument("a game needs a non-empty scene list");
  }
  if (streams.noise.size() != population.agents.size()) {
    throw std::invalid_argument("one noise stream per agent is required");
  }

  GameRecord record;
  record.game_index = game_index;

  // Context, role and topic selection.
  const Scene& scene = source.scenes[streams.scenes.UniformIndex(source.scenes.size())];
  const std::size_t k = population.agents.size();
  const auto speaker_id = static_cast<AgentId>(streams.pairs.UniformIndex(k));
  auto listener_id = static_cast<AgentId>(streams.pairs.UniformIndex(k - 1));
  if (listener_id >= speaker_id) ++listener_id;
  const auto topic = static_cast<std::uint32_t>(
      streams.topics.UniformIndex(scene.entities.size()));
  record.speaker = speaker_id;
  record.listener = listener_id;
  record.scene_id = scene.id;
  record.topic_index = topic;

  Agent& speaker = population.agents[speaker_id];
  Agent& listener = population.agents[listener_id];
  const SceneView seen_by_speaker =
      Observe(speaker, *source.dataset, scene, topic, streams.noise[speaker_id]);
  const SceneView seen_by_listener =
      Observe(listener, *source.dataset, scene, topic, streams.noise[listener_id]);

  // Conceptualisation and production.
  ProductionResult production =
      learning ? speaker.Produce(seen_by_speaker.topic(topic), seen_by_speaker.context)
               : speaker.ProduceReadOnly(seen_by_speaker.topic(topic),
                                         seen_by_speaker.context);
  record.invented = production.invented;
  record.utterance = production.utterance;

  // What the listener would have said in the speaker role.
  const ProductionResult listener_production = listener.ProduceReadOnly(
      seen_by_listener.topic(topic), seen_by_listener.context);
  record.coherent = production.utterance && listener_production.utterance &&
                    *listener_production.utterance == *production.utterance;

  if (!production.utterance) return record;
  const WordForm& form = *production.utterance;

  // Interpretation and feedback.
  auto pointed = listener.Interpret(form.text(), seen_by_listener.entities);
  if (pointed) record.listener_pointing = static_cast<std::uint32_t>(*pointed);
  record.success = pointed && *pointed == topic;
  if (!learning) return record;

  // Alignment.
  if (record.success) {
    speaker.AlignSuccess(form.text(), seen_by_speaker.topic(topic), seen_by_speaker.context,
                         production.invented ? nullptr : &production.candidates);
    listener.AlignSuccess(form.text(), seen_by_listener.topic(topic),
                          seen_by_listener.context, &listener_production.candidates);
  } else if (listener.FindWord(form.text())) {
    AlignFailureWrongPointing(speaker, listener, form.text(),
                              seen_by_listener.topic(topic), seen_by_listener.context);
  } else {
    AlignFailureUnknownWord(speaker, listener, form, seen_by_listener.topic(topic));
    record.adopted = true;
  }
  return record;
}

void Schedule::Validate() const {
  std::uint64_t previous = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const std::string field = "schedule[" + std::to_string(i) + "].at";
    const auto& event = events[i];
    if (event.at < 1 || event.at > total_games) {
      throw ConfigError(field, "must lie in [1, " + std::to_string(total_games) + "]");
    }
    if (i > 0 && event.at <= previous) {
      throw ConfigError(field, "event indices must be strictly increasing");
    }
    previous = event.at;
  }
}

void ApplySensorDefect(Population& population, std::size_t lost_per_agent) {
  for (auto& agent : population.agents) {
    if (lost_per_agent >= agent.sensors().size()) {
      throw ConfigError("schedule.lost_per_agent",
                        "agent " + std::to_string(agent.id()) + " has only " +
                            std::to_string(agent.sensors().size()) + " sensors");
    }
  }
  for (auto& agent : population.agents) {
    const std::vector<ChannelId> lost =
        DrawChannels(agent.sensors(), lost_per_agent, agent.mutable_rng());
    agent.LoseSensors(lost);
  }
}

EvaluationResult Evaluate(const Population& population, const SceneSource& test,
                          std::uint64_t games, std::uint64_t seed, std::size_t window,
                          const std::function<void(const GameRecord&)>& on_record) {
  Population frozen = population;
  GameStreams streams = GameStreams::Derive(seed, frozen.agents.size());
  MetricsTracker tracker(frozen.agents.size(), window);
  for (std::uint64_t g = 1; g <= games; ++g) {
    const GameRecord record = PlayGame(frozen, test, streams, /*learning=*/false, g);
    tracker.Observe(record);
    if (on_record) on_record(record);
  }
  EvaluationResult result;
  result.games = games;
  result.final_window = tracker.Snapshot();
  result.overall = tracker.Overall();
  return result;
}

RunResult RunExperiment(Population& population,
                        const std::map<std::string, SceneBank>& world,
                        const RunPlan& plan, const RunCallbacks& callbacks) {
  plan.schedule.Validate();
  auto bank_of = [&world](const std::string& name, const std::string& field) -> const SceneBank& {
    auto it = world.find(name);
    if (it == world.end()) throw ConfigError(field, "unknown dataset '" + name + "'");
    return it->second;
  };
  const SceneBank* current = &bank_of(plan.initial_dataset, "initial_dataset");
  if (current->train.empty()) {
    throw ConfigError("initial_dataset", "dataset '" + plan.initial_dataset + "' has no training scenes");
  }
  for (std::size_t i = 0; i < plan.schedule.events.size(); ++i) {
    const auto& event = plan.schedule.events[i];
    if (event.kind == ScheduleEvent::Kind::kSwitchDataset) {
      bank_of(event.dataset, "schedule[" + std::to_string(i) + "].dataset");
    }
  }
  std::vector<EvaluationRequest> evaluations = plan.evaluations;
  std::stable_sort(evaluations.begin(), evaluations.end(),
                   [](const auto& a, const auto& b) { return a.after < b.after; });
  for (std::size_t i = 0; i < evaluations.size(); ++i) {
    const std::string field = "evaluations[" + std::to_string(i) + "]";
    const auto& request = evaluations[i];
    const SceneBank& bank = bank_of(request.dataset, field + ".dataset");
    if (!bank.test_sets.contains(request.test_set)) {
      throw ConfigError(field + ".test_set", "dataset '" + request.dataset +
                                                 "' has no test set '" + request.test_set + "'");
    }
    if (request.after > plan.schedule.total_games) {
      throw ConfigError(field + ".after", "beyond the last game");
    }
  }

  GameStreams streams = GameStreams::Derive(plan.seed, population.agents.size());
  MetricsTracker tracker(population.agents.size(), plan.window);
  RunResult result;
  bool learning = true;
  std::size_t next_event = 0;
  std::size_t next_evaluation = 0;

  auto run_due_evaluations = [&](std::uint64_t game) {
    while (next_evaluation < evaluations.size() &&
           evaluations[next_evaluation].after == game) {
      const auto& request = evaluations[next_evaluation];
      const SceneBank& bank = world.at(request.dataset);
      SceneSource test{&bank.dataset, bank.test_sets.at(request.test_set)};
      EvaluationResult evaluation =
          Evaluate(population, test, request.games,
                   Rng::DeriveSeed(plan.seed, "evaluation", next_evaluation), plan.window);
      evaluation.label = request.label;
      evaluation.after = request.after;
      if (callbacks.on_evaluation) callbacks.on_evaluation(evaluation);
      result.evaluations.push_back(std::move(evaluation));
      ++next_evaluation;
    }
  };

  run_due_evaluations(0);
  for (std::uint64_t g = 1; g <= plan.schedule.total_games; ++g) {
    SceneSource source{&current->dataset, current->train};
    const GameRecord record = PlayGame(population, source, streams, learning, g);
    tracker.Observe(record);
    if (callbacks.on_record) callbacks.on_record(record);

    run_due_evaluations(g);
    while (next_event < plan.schedule.events.size() &&
           plan.schedule.events[next_event].at == g) {
      const auto& event = plan.schedule.events[next_event];
      switch (event.kind) {
        case ScheduleEvent::Kind::kSensorDefect:
          ApplySensorDefect(population, event.lost_per_agent);
          break;
        case ScheduleEvent::Kind::kSwitchDataset:
          current = &world.at(event.dataset);
          break;
        case ScheduleEvent::Kind::kFreezeLearning:
          learning = false;
          break;
        case ScheduleEvent::Kind::kUnfreezeLearning:
          learning = true;
          break;
      }
      ++next_event;
    }
  }
  result.final_window = tracker.Snapshot();
  result.peak_inventory_size = tracker.PeakInventorySize();
  return result;
}

}  // namespace langgame
