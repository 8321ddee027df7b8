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

#include "langgame/checkpoint.h"

#include <fstream>

#include <gtest/gtest.h>

#include "langgame/errors.h"
#include "langgame/game.h"
#include "test_util.h"

namespace langgame {
namespace {

struct Trained {
  ChannelSpace channels;
  SceneBank bank;
  Population population;
};

Trained Train(std::uint64_t seed, double shift = 0.0, double noise = 0.0) {
  Trained t;
  SyntheticSpec spec;
  spec.clusters = 5;
  spec.channels = 4;
  spec.entities_per_cluster = 20;
  Rng rng(seed);
  t.bank.dataset = GenerateSynthetic(spec, rng, t.channels, "toy");
  t.bank.train = BuildScenes(t.bank.dataset.Ids(), 300, {3, 6}, rng);
  LearningParams params;
  params.concept_params.max_subset_channels = 3;
  t.population = CreatePopulation(t.channels, 4, {SensorEndowment::Mode::kRandom, 3, {}},
                                   {shift, noise}, params, seed);
  GameStreams streams = GameStreams::Derive(seed, 4);
  for (std::uint64_t g = 1; g <= 1500; ++g) {
    PlayGame(t.population, {&t.bank.dataset, t.bank.train}, streams, true, g);
  }
  return t;
}

TEST(CheckpointTest, RoundTripIsExact) {
  const Trained t = Train(3, 0.1, 0.05);
  testing::TempDir dir;
  SaveCheckpoint(t.population, dir / "c.json");
  const Population loaded = LoadCheckpoint(dir / "c.json");
  EXPECT_EQ(SerializePopulation(loaded), SerializePopulation(t.population));
  ASSERT_EQ(loaded.agents.size(), t.population.agents.size());
  for (std::size_t i = 0; i < loaded.agents.size(); ++i) {
    const Agent& a = loaded.agents[i];
    const Agent& b = t.population.agents[i];
    EXPECT_EQ(a.inventory(), b.inventory());
    EXPECT_EQ(a.sensors(), b.sensors());
    EXPECT_TRUE(a.perception() == b.perception());
    EXPECT_TRUE(a.rng() == b.rng());
    EXPECT_EQ(a.params().concept_params.max_subset_channels, 3u);
  }
  EXPECT_EQ(loaded.channels.names(), t.population.channels.names());
}

TEST(CheckpointTest, LoadedPopulationPlaysIdentically) {
  const Trained t = Train(4);
  const Population loaded = PopulationFromJson(nlohmann::json::parse(SerializePopulation(t.population)));
  const SceneSource test{&t.bank.dataset, t.bank.train};
  const auto a = Evaluate(t.population, test, 300, 11, 100);
  const auto b = Evaluate(loaded, test, 300, 11, 100);
  EXPECT_EQ(a.overall.success, b.overall.success);
  EXPECT_EQ(a.overall.coherence, b.overall.coherence);
  EXPECT_EQ(a.final_window.inventory_size, b.final_window.inventory_size);

  // Training continues identically too.
  Population x = t.population, y = loaded;
  GameStreams sx = GameStreams::Derive(8, 4), sy = GameStreams::Derive(8, 4);
  for (std::uint64_t g = 1; g <= 300; ++g) {
    ASSERT_EQ(PlayGame(x, test, sx, true, g), PlayGame(y, test, sy, true, g));
  }
  EXPECT_EQ(SerializePopulation(x), SerializePopulation(y));
}

TEST(CheckpointTest, EmptyInventories) {
  ChannelSpace channels({"a", "b"});
  const Population p = CreatePopulation(channels, 2, {}, {}, {}, 1);
  const Population q = PopulationFromJson(nlohmann::json::parse(SerializePopulation(p)));
  EXPECT_EQ(SerializePopulation(q), SerializePopulation(p));
  EXPECT_TRUE(q.agents[0].inventory().empty());
}

TEST(CheckpointTest, RejectsWrongFormatAndVersion) {
  const Trained t = Train(5);
  nlohmann::json doc = nlohmann::json::parse(SerializePopulation(t.population));
  nlohmann::json wrong = doc;
  wrong["version"] = kCheckpointVersion + 1;
  EXPECT_THROW(PopulationFromJson(wrong), CheckpointError);
  wrong = doc;
  wrong.erase("version");
  EXPECT_THROW(PopulationFromJson(wrong), CheckpointError);
  wrong = doc;
  wrong["format"] = "something-else";
  EXPECT_THROW(PopulationFromJson(wrong), CheckpointError);
  EXPECT_THROW(PopulationFromJson(nlohmann::json::array()), CheckpointError);
}

TEST(CheckpointTest, RejectsCorruptContent) {
  const Trained t = Train(6);
  const nlohmann::json doc = nlohmann::json::parse(SerializePopulation(t.population));
  nlohmann::json bad = doc;
  bad["agents"][0]["sensors"][0] = "no-such-channel";
  EXPECT_THROW(PopulationFromJson(bad), CheckpointError);
  bad = doc;
  bad["agents"][0]["rng"] = "garbage";
  EXPECT_THROW(PopulationFromJson(bad), CheckpointError);
  bad = doc;
  bad["agents"][1]["id"] = 0;
  EXPECT_THROW(PopulationFromJson(bad), CheckpointError);
  bad = doc;
  bad["agents"][0]["inventory"][0]["form"] = "Hello";
  EXPECT_THROW(PopulationFromJson(bad), CheckpointError);
  bad = doc;
  bad["agents"][0].erase("perception");
  EXPECT_THROW(PopulationFromJson(bad), CheckpointError);

  testing::TempDir dir;
  const std::string text = SerializePopulation(t.population);
  std::ofstream(dir / "cut.json") << text.substr(0, text.size() / 2);
  EXPECT_THROW(LoadCheckpoint(dir / "cut.json"), CheckpointError);
  EXPECT_THROW(LoadCheckpoint(dir / "absent.json"), CheckpointError);
}

}  // namespace
}  // namespace langgame
