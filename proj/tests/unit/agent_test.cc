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

#include "langgame/agent.h"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "langgame/errors.h"
#include "oracles/oracles.h"
#include "test_util.h"

namespace langgame {
namespace {

using testing::Ch;
using testing::Stat;
using testing::Vec;

Agent MakeAgent(std::size_t channels, std::uint64_t seed = 1, LearningParams params = {}) {
  std::vector<ChannelId> sensors;
  for (std::uint32_t i = 0; i < channels; ++i) sensors.push_back(Ch(i));
  return Agent(0, sensors, {}, Rng(seed), params);
}

Word MakeWord(const std::string& form, ConceptRepresentation meaning, double score) {
  return Word{WordForm(form), std::move(meaning), score};
}

ConceptRepresentation OneChannel(std::uint32_t channel, double mean, double std) {
  return ConceptRepresentation({{Ch(channel), Stat(mean, std)}});
}

TEST(WordFormTest, Pattern) {
  EXPECT_TRUE(WordForm::IsWellFormed("zapose"));
  EXPECT_FALSE(WordForm::IsWellFormed("zapos"));
  EXPECT_FALSE(WordForm::IsWellFormed("azpose"));
  EXPECT_FALSE(WordForm::IsWellFormed("capose"));  // c is not a consonant here
  EXPECT_FALSE(WordForm::IsWellFormed("zaposy"));
  EXPECT_THROW(WordForm("hello!"), std::invalid_argument);
}

TEST(WordFormTest, GeneratedFormsAreWellFormedUniqueAndDeterministic) {
  Rng a(11), b(11);
  std::set<std::string> taken;
  for (int i = 0; i < 2000; ++i) {
    const WordForm f = GenerateWordForm(a, [&](const std::string& t) { return taken.contains(t); });
    ASSERT_TRUE(WordForm::IsWellFormed(f.text()));
    ASSERT_TRUE(taken.insert(f.text()).second);
  }
  std::set<std::string> again;
  for (int i = 0; i < 2000; ++i) {
    const WordForm f = GenerateWordForm(b, [&](const std::string& t) { return again.contains(t); });
    ASSERT_TRUE(taken.contains(f.text()));
    again.insert(f.text());
  }
}

TEST(AgentTest, InventSeedsConceptFromTopic) {
  Agent agent = MakeAgent(2);
  const Word& w = agent.Invent(Vec({0.2, 0.7}));
  ASSERT_EQ(w.meaning.size(), 2u);
  const ConceptParams cp;
  EXPECT_DOUBLE_EQ(w.meaning.Find(Ch(0))->mean, 0.2);
  EXPECT_DOUBLE_EQ(w.meaning.Find(Ch(1))->mean, 0.7);
  EXPECT_NEAR(w.meaning.Find(Ch(0))->Std(cp.std_floor), 0.01, 1e-15);
  EXPECT_DOUBLE_EQ(w.meaning.Find(Ch(1))->Weight(cp.sigmoid_slope), 0.5);
  EXPECT_DOUBLE_EQ(w.score, 0.5);
  EXPECT_EQ(agent.FindWord(w.form.text()), 0u);
}

TEST(AgentTest, ProduceInventsOnlyWithoutCandidates) {
  Agent agent = MakeAgent(1);
  const std::vector<PerceivedVector> context = {Vec({0.9})};
  const auto first = agent.Produce(Vec({0.1}), context);
  EXPECT_TRUE(first.invented);
  EXPECT_TRUE(first.candidates.empty());
  const auto second = agent.Produce(Vec({0.1}), context);
  EXPECT_FALSE(second.invented);
  EXPECT_EQ(second.utterance, first.utterance);
  EXPECT_EQ(agent.inventory().size(), 1u);
}

TEST(AgentTest, ChoiceMaximizesScoreTimesPower) {
  // Word A: score 1.0, power 0.2. Word B: score 0.5, power 0.5.
  Agent agent = MakeAgent(2);
  agent.RestoreInventory({MakeWord("babebi", OneChannel(0, 0.5, 0.1), 1.0),
                          MakeWord("dadedi", OneChannel(1, 0.5, 0.1), 0.5)});
  const PerceivedVector topic = Vec({0.5, 0.5});
  const std::vector<PerceivedVector> context = {
      Vec({0.5 + 0.1 * std::log(1.25), 0.5 + 0.1 * std::log(2.0)})};
  const auto result = agent.ProduceReadOnly(topic, context);
  ASSERT_EQ(result.candidates.size(), 2u);
  EXPECT_NEAR(result.candidates[0].power, 0.2, 1e-12);
  EXPECT_NEAR(result.candidates[1].power, 0.5, 1e-12);
  EXPECT_EQ(result.utterance->text(), "dadedi");
}

TEST(AgentTest, EqualAdequacyPrefersOlderWord) {
  Agent agent = MakeAgent(1);
  agent.RestoreInventory({MakeWord("zapose", OneChannel(0, 0.3, 0.1), 0.5),
                          MakeWord("babebi", OneChannel(0, 0.3, 0.1), 0.5)});
  const std::vector<PerceivedVector> context = {Vec({0.8})};
  EXPECT_EQ(agent.ProduceReadOnly(Vec({0.3}), context).used_word, 0u);
}

TEST(AgentTest, CandidatesMatchBruteForce) {
  testing::Gen gen(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t channels = gen.Int(1, 4);
    Agent agent = MakeAgent(channels);
    std::vector<Word> words;
    const std::size_t n = gen.Int(1, 6);
    for (std::size_t w = 0; w < n; ++w) {
      std::vector<ConceptRepresentation::Entry> entries;
      for (std::uint32_t c = 0; c < channels; ++c) {
        if (gen.Coin(0.7)) {
          entries.emplace_back(Ch(c), Stat(gen.Uniform(0, 1), gen.Uniform(0.01, 0.4),
                                           gen.Uniform(-6, 6)));
        }
      }
      if (entries.empty()) entries.emplace_back(Ch(0), Stat(0.5, 0.1));
      std::string form = "babebi";
      form[3] = "aeiou"[w / 5];
      form[5] = "aeiou"[w % 5];
      words.push_back(Word{WordForm(form), ConceptRepresentation(entries), 0.5});
    }
    agent.RestoreInventory(words);
    const PerceivedVector topic = gen.Vector(channels);
    std::vector<PerceivedVector> context;
    const std::size_t k = gen.Int(1, 4);
    for (std::size_t i = 0; i < k; ++i) context.push_back(gen.Vector(channels));

    const auto expected = oracles::BruteForceCandidates(words, topic, context);
    const auto got = agent.Candidates(topic, context);
    ASSERT_EQ(got.size(), expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      ASSERT_EQ(got[i].word, expected[i].word);
      ASSERT_NEAR(got[i].power, expected[i].power, 1e-12);
      ASSERT_GT(got[i].power, 0.0);
    }
  }
}

TEST(AgentTest, InterpretPicksMostSimilarLowestOnTies) {
  Agent agent = MakeAgent(1);
  agent.RestoreInventory({MakeWord("zapose", OneChannel(0, 0.4, 0.1), 0.5)});
  const std::vector<PerceivedVector> scene = {Vec({0.9}), Vec({0.41}), Vec({0.39}), Vec({0.41})};
  EXPECT_EQ(agent.Interpret("zapose", scene), 1u);
  EXPECT_FALSE(agent.Interpret("babebi", scene).has_value());

  Agent other = MakeAgent(2);
  other.RestoreInventory({MakeWord("zapose", OneChannel(1, 0.4, 0.1), 0.5)});
  PerceivedVector only_zero;
  only_zero.Set(Ch(0), 0.4);
  const std::vector<PerceivedVector> blind = {only_zero, only_zero};
  EXPECT_FALSE(other.Interpret("zapose", blind).has_value());
}

TEST(AgentTest, AdoptAndDuplicate) {
  Agent agent = MakeAgent(2);
  const Word& w = agent.Adopt(WordForm("zapose"), Vec({0.3, 0.6}));
  EXPECT_EQ(w.form.text(), "zapose");
  EXPECT_DOUBLE_EQ(w.meaning.Find(Ch(1))->mean, 0.6);
  EXPECT_THROW(agent.Adopt(WordForm("zapose"), Vec({0.1, 0.1})), DuplicateForm);
}

TEST(AgentTest, AlignSuccessRewardsAndInhibits) {
  Agent agent = MakeAgent(1);
  agent.RestoreInventory({MakeWord("zapose", OneChannel(0, 0.3, 0.1), 0.5),
                          MakeWord("babebi", OneChannel(0, 0.3, 0.1), 0.5)});
  const std::vector<PerceivedVector> context = {Vec({0.8})};
  agent.AlignSuccess("zapose", Vec({0.3}), context);
  EXPECT_NEAR(agent.word(0).score, 0.6, 1e-15);
  // Identical meanings: similarity 1, so inhibition applies in full.
  EXPECT_NEAR(agent.word(1).score, 0.48, 1e-12);
  EXPECT_EQ(agent.word(0).meaning.Find(Ch(0))->count, 2u);
  EXPECT_EQ(agent.word(1).meaning.Find(Ch(0))->count, 1u);
  EXPECT_THROW(agent.AlignSuccess("dadedi", Vec({0.3}), context), InternalProtocolError);
}

TEST(AgentTest, ScoreSaturatesAtOne) {
  Agent agent = MakeAgent(1);
  agent.RestoreInventory({MakeWord("zapose", OneChannel(0, 0.3, 0.1), 0.95)});
  const std::vector<PerceivedVector> context = {Vec({0.8})};
  agent.AlignSuccess("zapose", Vec({0.3}), context);
  EXPECT_DOUBLE_EQ(agent.word(0).score, 1.0);
}

TEST(AgentTest, UpdateConceptRewardsDiscriminatingChannels) {
  Agent agent = MakeAgent(2);
  agent.RestoreInventory({MakeWord("zapose",
                                   ConceptRepresentation({{Ch(0), Stat(0.2, 0.1)},
                                                          {Ch(1), Stat(0.5, 0.1)}}),
                                   0.5)});
  const std::vector<PerceivedVector> context = {Vec({0.8, 0.5})};
  agent.UpdateConcept("zapose", Vec({0.2, 0.5}), context);
  EXPECT_DOUBLE_EQ(agent.word(0).meaning.Find(Ch(0))->weight_logit, 1.0);
  EXPECT_DOUBLE_EQ(agent.word(0).meaning.Find(Ch(1))->weight_logit, -5.0);
}

TEST(AgentTest, WrongPointingPunishesBoth) {
  Agent speaker = MakeAgent(1, 1);
  Agent listener = MakeAgent(1, 2);
  speaker.RestoreInventory({MakeWord("zapose", OneChannel(0, 0.3, 0.1), 0.05)});
  listener.RestoreInventory({MakeWord("zapose", OneChannel(0, 0.7, 0.1), 0.5)});
  const std::vector<PerceivedVector> context = {Vec({0.7})};
  AlignFailureWrongPointing(speaker, listener, "zapose", Vec({0.3}), context);
  EXPECT_DOUBLE_EQ(speaker.word(0).score, 0.0);
  EXPECT_NEAR(listener.word(0).score, 0.4, 1e-15);
  // The listener's meaning moves toward the topic it missed.
  EXPECT_LT(listener.word(0).meaning.Find(Ch(0))->mean, 0.7);
}

TEST(AgentTest, UnknownWordIsAdopted) {
  Agent speaker = MakeAgent(1, 1);
  Agent listener = MakeAgent(1, 2);
  speaker.RestoreInventory({MakeWord("zapose", OneChannel(0, 0.3, 0.1), 0.5)});
  AlignFailureUnknownWord(speaker, listener, WordForm("zapose"), Vec({0.35}));
  EXPECT_NEAR(speaker.word(0).score, 0.4, 1e-15);
  ASSERT_EQ(listener.inventory().size(), 1u);
  EXPECT_DOUBLE_EQ(listener.word(0).meaning.Find(Ch(0))->mean, 0.35);
}

TEST(AgentTest, RepeatedPunishmentReachesZero) {
  Agent agent = MakeAgent(1);
  agent.RestoreInventory({MakeWord("zapose", OneChannel(0, 0.3, 0.1), 0.5)});
  for (int i = 0; i < 5; ++i) agent.PunishWord("zapose");
  EXPECT_NEAR(agent.word(0).score, 0.0, 1e-12);
  agent.PunishWord("zapose");
  EXPECT_DOUBLE_EQ(agent.word(0).score, 0.0);
}

TEST(AgentTest, LoseSensors) {
  Agent agent = MakeAgent(3);
  agent.LoseSensors(std::vector<ChannelId>{});
  EXPECT_EQ(agent.sensors().size(), 3u);
  agent.LoseSensors(std::vector<ChannelId>{Ch(1)});
  EXPECT_EQ(agent.sensors(), (std::vector<ChannelId>{Ch(0), Ch(2)}));
  EXPECT_THROW(agent.LoseSensors(std::vector<ChannelId>{Ch(1)}), UnknownSensor);
  EXPECT_THROW(agent.LoseSensors(std::vector<ChannelId>{Ch(0), Ch(2)}), std::invalid_argument);
  EXPECT_EQ(agent.sensors().size(), 2u);
}

TEST(AgentTest, ReadOnlyProductionDoesNotMutate) {
  testing::Gen gen(5);
  Agent agent = MakeAgent(3);
  std::vector<PerceivedVector> context = {gen.Vector(3), gen.Vector(3)};
  for (int i = 0; i < 20; ++i) agent.Produce(gen.Vector(3), context);
  const std::vector<Word> before = agent.inventory();
  const Rng rng_before = agent.rng();
  for (int i = 0; i < 200; ++i) {
    context = {gen.Vector(3), gen.Vector(3)};
    agent.ProduceReadOnly(gen.Vector(3), context);
    agent.Interpret(agent.word(0).form.text(), context);
  }
  EXPECT_EQ(agent.inventory(), before);
  EXPECT_TRUE(agent.rng() == rng_before);
}

TEST(AgentTest, ScoresStayInUnitInterval) {
  testing::Gen gen(6);
  Agent a = MakeAgent(2, 1);
  Agent b = MakeAgent(2, 2);
  for (int i = 0; i < 3000; ++i) {
    const PerceivedVector topic = gen.Vector(2);
    const std::vector<PerceivedVector> context = {gen.Vector(2), gen.Vector(2)};
    const auto said = a.Produce(topic, context);
    const std::string form = said.utterance->text();
    if (!b.FindWord(form)) {
      AlignFailureUnknownWord(a, b, *said.utterance, topic);
    } else if (gen.Coin()) {
      a.AlignSuccess(form, topic, context);
      b.AlignSuccess(form, topic, context);
    } else {
      AlignFailureWrongPointing(a, b, form, topic, context);
    }
    std::swap(a, b);
  }
  for (const Agent* agent : {&a, &b}) {
    for (const Word& w : agent->inventory()) {
      ASSERT_GE(w.score, 0.0);
      ASSERT_LE(w.score, 1.0);
    }
  }
}

}  // namespace
}  // namespace langgame
