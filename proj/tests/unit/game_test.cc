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

#include <map>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "langgame/checkpoint.h"
#include "langgame/errors.h"

namespace langgame {
namespace {

struct Toy {
  ChannelSpace channels;
  std::map<std::string, SceneBank> banks;
};

// Clustered data on channels prefix+1..prefix+n with a disjoint split.
SceneBank MakeBank(ChannelSpace& channels, const std::string& name, std::size_t first_index,
                   std::uint64_t seed, std::size_t scene_min = 3, std::size_t scene_max = 6) {
  SyntheticSpec spec;
  spec.clusters = 6;
  spec.channels = 3;
  spec.entities_per_cluster = 20;
  spec.first_channel_index = first_index;
  Rng rng(seed);
  SceneBank bank;
  bank.dataset = GenerateSynthetic(spec, rng, channels, name);
  const auto ids = bank.dataset.Ids();
  const EntitySplit split = SplitEntities(ids, 0.8, rng);
  bank.train = BuildScenes(split.train, 500, {scene_min, scene_max}, rng);
  bank.test_sets["test"] = BuildScenes(split.test, 100, {scene_min, scene_max}, rng);
  return bank;
}

Toy MakeToy(std::uint64_t seed = 1) {
  Toy toy;
  toy.banks["a"] = MakeBank(toy.channels, "a", 1, seed);
  return toy;
}

Population MakePopulation(const ChannelSpace& channels, std::size_t size, std::uint64_t seed,
                          SensorEndowment endowment = {}) {
  return CreatePopulation(channels, size, endowment, {}, {}, seed);
}

SceneSource Train(const Toy& toy, const std::string& name = "a") {
  const SceneBank& bank = toy.banks.at(name);
  return {&bank.dataset, bank.train};
}

TEST(PopulationTest, SensorModes) {
  ChannelSpace channels;
  for (int i = 0; i < 20; ++i) channels.Intern("f" + std::to_string(i));
  const Population all = MakePopulation(channels, 4, 1);
  for (const auto& agent : all.agents) EXPECT_EQ(agent.sensors().size(), 20u);

  SensorEndowment random{SensorEndowment::Mode::kRandom, 10, {}};
  const Population hetero = MakePopulation(channels, 10, 1, random);
  std::set<std::vector<ChannelId>> distinct;
  for (const auto& agent : hetero.agents) {
    EXPECT_EQ(agent.sensors().size(), 10u);
    distinct.insert(agent.sensors());
  }
  EXPECT_GT(distinct.size(), 1u);

  SensorEndowment shared{SensorEndowment::Mode::kRandomShared, 5, {}};
  const Population same = MakePopulation(channels, 5, 1, shared);
  for (const auto& agent : same.agents) EXPECT_EQ(agent.sensors(), same.agents[0].sensors());

  SensorEndowment lists{SensorEndowment::Mode::kExplicit, 0, {{"f1", "f2"}, {"f3"}}};
  const Population explicit_pop = MakePopulation(channels, 2, 1, lists);
  EXPECT_EQ(explicit_pop.agents[1].sensors(), std::vector<ChannelId>{ChannelId(3)});

  EXPECT_THROW(MakePopulation(channels, 1, 1), ConfigError);
  EXPECT_THROW(MakePopulation(channels, 2, 1, {SensorEndowment::Mode::kRandom, 21, {}}),
               ConfigError);
  EXPECT_THROW(MakePopulation(channels, 2, 1, {SensorEndowment::Mode::kExplicit, 0, {{"zz"}, {"f1"}}}),
               ConfigError);
}

TEST(PlayGameTest, FirstGameInventsAndAdopts) {
  const Toy toy = MakeToy();
  Population pop = MakePopulation(toy.channels, 3, 2);
  GameStreams streams = GameStreams::Derive(5, 3);
  const GameRecord r = PlayGame(pop, Train(toy), streams, true, 1);
  EXPECT_TRUE(r.invented);
  EXPECT_TRUE(r.adopted);
  EXPECT_FALSE(r.success);
  EXPECT_FALSE(r.listener_pointing.has_value());
  EXPECT_EQ(r.coherent, false);
  ASSERT_TRUE(r.utterance.has_value());
  EXPECT_NE(r.speaker, r.listener);
  EXPECT_EQ(pop.agents[r.speaker].inventory().size(), 1u);
  EXPECT_TRUE(pop.agents[r.listener].FindWord(r.utterance->text()).has_value());
  // Speaker punished once, listener untouched.
  EXPECT_NEAR(pop.agents[r.speaker].word(0).score, 0.4, 1e-15);
  EXPECT_DOUBLE_EQ(pop.agents[r.listener].word(0).score, 0.5);
}

TEST(PlayGameTest, TwoAgentsReachAgreement) {
  const Toy toy = MakeToy();
  Population pop = MakePopulation(toy.channels, 2, 3);
  GameStreams streams = GameStreams::Derive(6, 2);
  int late_success = 0;
  for (std::uint64_t g = 1; g <= 4000; ++g) {
    const GameRecord r = PlayGame(pop, Train(toy), streams, true, g);
    if (g > 3000 && r.success) ++late_success;
  }
  EXPECT_GE(late_success, 850);
}

TEST(PlayGameTest, FrozenGameWithoutWordsChangesNothing) {
  const Toy toy = MakeToy();
  Population pop = MakePopulation(toy.channels, 3, 2);
  const std::string before = SerializePopulation(pop);
  GameStreams streams = GameStreams::Derive(5, 3);
  const GameRecord r = PlayGame(pop, Train(toy), streams, false, 1);
  EXPECT_FALSE(r.utterance.has_value());
  EXPECT_FALSE(r.success);
  EXPECT_FALSE(r.invented);
  EXPECT_EQ(SerializePopulation(pop), before);
}

TEST(PlayGameTest, FrozenGamesNeverMutate) {
  const Toy toy = MakeToy();
  Population pop = MakePopulation(toy.channels, 4, 2);
  GameStreams streams = GameStreams::Derive(5, 4);
  for (std::uint64_t g = 1; g <= 500; ++g) PlayGame(pop, Train(toy), streams, true, g);
  const std::string before = SerializePopulation(pop);
  bool any_utterance = false;
  for (std::uint64_t g = 1; g <= 500; ++g) {
    any_utterance |= PlayGame(pop, Train(toy), streams, false, g).utterance.has_value();
  }
  EXPECT_TRUE(any_utterance);
  EXPECT_EQ(SerializePopulation(pop), before);
}

TEST(PlayGameTest, RolesAreUniformOverOrderedPairs) {
  const Toy toy = MakeToy();
  const std::size_t k = 4;
  Population pop = MakePopulation(toy.channels, k, 2);
  GameStreams streams = GameStreams::Derive(9, k);
  std::map<std::pair<AgentId, AgentId>, int> counts;
  const int games = 12000;
  for (int g = 1; g <= games; ++g) {
    const GameRecord r = PlayGame(pop, Train(toy), streams, false, g);
    ASSERT_NE(r.speaker, r.listener);
    ++counts[{r.speaker, r.listener}];
  }
  ASSERT_EQ(counts.size(), k * (k - 1));
  const double expected = static_cast<double>(games) / (k * (k - 1));
  double chi2 = 0;
  for (const auto& [pair, n] : counts) chi2 += (n - expected) * (n - expected) / expected;
  // 11 degrees of freedom, p = 0.001.
  EXPECT_LT(chi2, 31.26);
}

TEST(PlayGameTest, ReplayIsIdentical) {
  const Toy toy = MakeToy();
  auto play = [&](std::uint64_t seed) {
    Population pop = MakePopulation(toy.channels, 4, seed);
    GameStreams streams = GameStreams::Derive(seed, 4);
    std::vector<GameRecord> records;
    for (std::uint64_t g = 1; g <= 1000; ++g) {
      records.push_back(PlayGame(pop, Train(toy), streams, true, g));
    }
    return std::make_pair(records, SerializePopulation(pop));
  };
  const auto a = play(3), b = play(3), c = play(4);
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second, b.second);
  EXPECT_NE(a.first, c.first);
}

TEST(PlayGameTest, RejectsBadInput) {
  const Toy toy = MakeToy();
  Population pop = MakePopulation(toy.channels, 3, 2);
  GameStreams streams = GameStreams::Derive(5, 2);
  EXPECT_THROW(PlayGame(pop, Train(toy), streams, true, 1), std::invalid_argument);
  GameStreams ok = GameStreams::Derive(5, 3);
  EXPECT_THROW(PlayGame(pop, SceneSource{}, ok, true, 1), std::invalid_argument);
}

TEST(ScheduleTest, Validation) {
  Schedule s;
  s.total_games = 100;
  EXPECT_NO_THROW(s.Validate());
  s.events = {{1, ScheduleEvent::Kind::kFreezeLearning}, {100, ScheduleEvent::Kind::kUnfreezeLearning}};
  EXPECT_NO_THROW(s.Validate());
  s.events = {{0, ScheduleEvent::Kind::kFreezeLearning}};
  EXPECT_THROW(s.Validate(), ConfigError);
  s.events = {{101, ScheduleEvent::Kind::kFreezeLearning}};
  EXPECT_THROW(s.Validate(), ConfigError);
  s.events = {{5, ScheduleEvent::Kind::kFreezeLearning}, {5, ScheduleEvent::Kind::kUnfreezeLearning}};
  EXPECT_THROW(s.Validate(), ConfigError);
}

TEST(SensorDefectTest, RemovesSensorsPerAgent) {
  const Toy toy = MakeToy();
  Population pop = MakePopulation(toy.channels, 5, 2);
  ApplySensorDefect(pop, 1);
  std::set<std::vector<ChannelId>> remaining;
  for (const auto& agent : pop.agents) {
    EXPECT_EQ(agent.sensors().size(), 2u);
    remaining.insert(agent.sensors());
  }
  EXPECT_THROW(ApplySensorDefect(pop, 2), ConfigError);
  for (const auto& agent : pop.agents) EXPECT_EQ(agent.sensors().size(), 2u);
  ApplySensorDefect(pop, 0);
  for (const auto& agent : pop.agents) EXPECT_EQ(agent.sensors().size(), 2u);
}

TEST(EvaluateTest, LeavesPopulationUntouchedAndIsDeterministic) {
  const Toy toy = MakeToy();
  Population pop = MakePopulation(toy.channels, 4, 2);
  GameStreams streams = GameStreams::Derive(5, 4);
  for (std::uint64_t g = 1; g <= 2000; ++g) PlayGame(pop, Train(toy), streams, true, g);
  const std::string before = SerializePopulation(pop);
  const SceneBank& bank = toy.banks.at("a");
  const SceneSource test{&bank.dataset, bank.test_sets.at("test")};
  std::uint64_t seen = 0;
  const auto a = Evaluate(pop, test, 500, 7, 100, [&](const GameRecord&) { ++seen; });
  const auto b = Evaluate(pop, test, 500, 7, 100);
  EXPECT_EQ(seen, 500u);
  EXPECT_EQ(SerializePopulation(pop), before);
  EXPECT_EQ(a.final_window.success, b.final_window.success);
  EXPECT_EQ(a.overall.success, b.overall.success);
  EXPECT_GT(*a.overall.success, 0.5);
}

TEST(EvaluateTest, SilentPopulationScoresZero) {
  const Toy toy = MakeToy();
  Population pop = MakePopulation(toy.channels, 3, 2);
  const SceneBank& bank = toy.banks.at("a");
  const auto r = Evaluate(pop, {&bank.dataset, bank.test_sets.at("test")}, 50, 1, 10);
  EXPECT_DOUBLE_EQ(*r.overall.success, 0.0);
}

TEST(RunExperimentTest, EventsAndEvaluations) {
  Toy toy = MakeToy();
  toy.banks["b"] = MakeBank(toy.channels, "b", 6, 9);
  Population pop = MakePopulation(toy.channels, 4, 2);
  RunPlan plan;
  plan.initial_dataset = "a";
  plan.seed = 3;
  plan.window = 100;
  plan.schedule.total_games = 3000;
  ScheduleEvent next;
  next.at = 1500;
  next.kind = ScheduleEvent::Kind::kSwitchDataset;
  next.dataset = "b";
  plan.schedule.events = {next};
  plan.evaluations = {{3000, "a", "test", 200, "a-after"},
                      {0, "a", "test", 50, "start"},
                      {1500, "a", "test", 200, "a-before"}};
  std::vector<std::string> order;
  std::uint64_t records = 0;
  RunCallbacks callbacks;
  callbacks.on_record = [&](const GameRecord&) { ++records; };
  callbacks.on_evaluation = [&](const EvaluationResult& e) { order.push_back(e.label); };
  const RunResult result = RunExperiment(pop, toy.banks, plan, callbacks);
  EXPECT_EQ(records, 3000u);
  EXPECT_EQ(order, (std::vector<std::string>{"start", "a-before", "a-after"}));
  EXPECT_DOUBLE_EQ(*result.evaluations[0].overall.success, 0.0);
  EXPECT_GT(*result.evaluations[1].overall.success, 0.5);
  ASSERT_TRUE(result.peak_inventory_size.has_value());

  // Words coined after the switch describe the second dataset's channels.
  const ChannelId b_channel = *toy.channels.Find("c6");
  bool any = false;
  for (const auto& agent : pop.agents) {
    for (const auto& word : agent.inventory()) any |= word.meaning.Find(b_channel) != nullptr;
  }
  EXPECT_TRUE(any);
}

TEST(RunExperimentTest, FreezeStopsLearning) {
  const Toy toy = MakeToy();
  Population pop = MakePopulation(toy.channels, 4, 2);
  RunPlan plan;
  plan.initial_dataset = "a";
  plan.schedule.total_games = 400;
  plan.schedule.events = {{200, ScheduleEvent::Kind::kFreezeLearning}};
  std::uint64_t after = 0, learned_after = 0;
  RunCallbacks callbacks;
  callbacks.on_record = [&](const GameRecord& r) {
    if (r.game_index <= 200) return;
    ++after;
    if (r.invented || r.adopted) ++learned_after;
  };
  const std::string before_run = SerializePopulation(pop);
  RunExperiment(pop, toy.banks, plan, callbacks);
  EXPECT_EQ(after, 200u);
  EXPECT_EQ(learned_after, 0u);
  EXPECT_NE(SerializePopulation(pop), before_run);
}

TEST(RunExperimentTest, RejectsBadPlans) {
  const Toy toy = MakeToy();
  Population pop = MakePopulation(toy.channels, 3, 2);
  RunPlan plan;
  plan.initial_dataset = "missing";
  plan.schedule.total_games = 10;
  EXPECT_THROW(RunExperiment(pop, toy.banks, plan), ConfigError);
  plan.initial_dataset = "a";
  plan.evaluations = {{11, "a", "test", 10, "late"}};
  EXPECT_THROW(RunExperiment(pop, toy.banks, plan), ConfigError);
  plan.evaluations = {{5, "a", "nope", 10, "bad"}};
  EXPECT_THROW(RunExperiment(pop, toy.banks, plan), ConfigError);
  plan.evaluations.clear();
  ScheduleEvent next;
  next.at = 5;
  next.kind = ScheduleEvent::Kind::kSwitchDataset;
  next.dataset = "zzz";
  plan.schedule.events = {next};
  EXPECT_THROW(RunExperiment(pop, toy.banks, plan), ConfigError);
}

TEST(RunExperimentTest, ZeroGames) {
  const Toy toy = MakeToy();
  Population pop = MakePopulation(toy.channels, 3, 2);
  RunPlan plan;
  plan.initial_dataset = "a";
  const RunResult r = RunExperiment(pop, toy.banks, plan);
  EXPECT_FALSE(r.final_window.success.has_value());
}

}  // namespace
}  // namespace langgame
