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

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "langgame/concept.h"
#include "langgame/experiment.h"
#include "langgame/game.h"
#include "langgame/presets.h"
#include "langgame/random.h"

namespace langgame {
namespace {

ConceptRepresentation RandomConcept(Rng& rng, std::size_t channels) {
  std::vector<ConceptRepresentation::Entry> entries;
  for (std::uint32_t c = 0; c < channels; ++c) {
    entries.emplace_back(ChannelId(c),
                         ChannelStat::Seed(rng.UniformReal(), 0.05 + 0.3 * rng.UniformReal(),
                                           4.0 * rng.UniformReal() - 2.0));
  }
  return ConceptRepresentation(std::move(entries));
}

PerceivedVector RandomVector(Rng& rng, std::size_t channels) {
  PerceivedVector x(channels);
  for (std::uint32_t c = 0; c < channels; ++c) x.Set(ChannelId(c), rng.UniformReal());
  return x;
}

void BM_EntityConceptSimilarity(benchmark::State& state) {
  Rng rng(1);
  const auto channels = static_cast<std::size_t>(state.range(0));
  const ConceptRepresentation c = RandomConcept(rng, channels);
  const PerceivedVector x = RandomVector(rng, channels);
  for (auto _ : state) benchmark::DoNotOptimize(EntityConceptSimilarity(c, x));
}
BENCHMARK(BM_EntityConceptSimilarity)->Arg(4)->Arg(11)->Arg(28);

void BM_HellingerSimilarity(benchmark::State& state) {
  const Gaussian a{0.3, 0.1};
  const Gaussian b{0.45, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(HellingerSimilarity(a, b));
}
BENCHMARK(BM_HellingerSimilarity);

void BM_BestChannelSubset(benchmark::State& state) {
  Rng rng(2);
  const auto channels = static_cast<std::size_t>(state.range(0));
  const ConceptRepresentation c = RandomConcept(rng, channels);
  const PerceivedVector topic = RandomVector(rng, channels);
  std::vector<PerceivedVector> context;
  for (int k = 0; k < 4; ++k) context.push_back(RandomVector(rng, channels));
  for (auto _ : state) benchmark::DoNotOptimize(BestChannelSubset(c, topic, context));
}
BENCHMARK(BM_BestChannelSubset)->Arg(4)->Arg(11)->Arg(20)->Arg(28);

void BM_PlayGame(benchmark::State& state) {
  const ExperimentConfig config = DeskScale(Preset("baseline-clevr"), 1000);
  World world = BuildWorld(config, 1);
  Population population = CreatePopulation(world.channels, 10, {}, {}, config.learning, 2);
  GameStreams streams = GameStreams::Derive(3, 10);
  const SceneBank& bank = world.banks.at("clevr");
  const SceneSource source{&bank.dataset, bank.train};
  std::uint64_t game = 0;
  for (; game < 2000; ++game) PlayGame(population, source, streams, true, game + 1);
  for (auto _ : state) {
    ++game;
    benchmark::DoNotOptimize(PlayGame(population, source, streams, true, game));
  }
}
BENCHMARK(BM_PlayGame);

}  // namespace
}  // namespace langgame

BENCHMARK_MAIN();
