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

#ifndef LANGGAME_AGENT_H_
#define LANGGAME_AGENT_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "langgame/channel.h"
#include "langgame/concept.h"
#include "langgame/random.h"
#include "langgame/world.h"

namespace langgame {

using AgentId = std::uint32_t;

// Score and concept update constants. Defaults are the standard settings.
struct LearningParams {
  double initial_score = 0.5;
  double score_reward = 0.1;
  double score_punishment = -0.1;
  // Competitors of a successful word move by inhibition * similarity.
  double inhibition = -0.02;
  double initial_std = 0.01;
  double initial_weight_logit = 0.0;
  double weight_reward = 1.0;
  double weight_punishment = -5.0;
  ConceptParams concept_params;
};

// A word form: three consonant-vowel syllables, e.g. "demoxu".
class WordForm {
 public:
  static constexpr std::string_view kConsonants = "bdfgklmnprstvxz";
  static constexpr std::string_view kVowels = "aeiou";
  static constexpr std::size_t kSyllables = 3;

  // Throws std::invalid_argument for text outside the form language.
  explicit WordForm(std::string text);

  static bool IsWellFormed(std::string_view text);

  const std::string& text() const { return text_; }

  friend auto operator<=>(const WordForm&, const WordForm&) = default;

 private:
  std::string text_;
};

// Draws forms uniformly from the form language until one is not `taken`.
WordForm GenerateWordForm(Rng& rng,
                          const std::function<bool(const std::string&)>& taken);

struct Word {
  WordForm form;
  ConceptRepresentation meaning;
  // Entrenchment, kept in [0, 1].
  double score = 0.5;

  friend bool operator==(const Word&, const Word&) = default;
};

// A word that singles out the topic, with its discriminative power (> 0).
struct Candidate {
  std::size_t word = 0;
  double power = 0.0;
};

struct ProductionResult {
  std::optional<WordForm> utterance;
  std::optional<std::size_t> used_word;
  // Candidate words before any invention.
  std::vector<Candidate> candidates;
  bool invented = false;
};

class Agent {
 public:
  Agent(AgentId id, std::vector<ChannelId> sensors, PerceptionProfile perception,
        Rng rng, LearningParams params = {});

  AgentId id() const { return id_; }
  // Sorted, non-empty.
  const std::vector<ChannelId>& sensors() const { return sensors_; }
  const PerceptionProfile& perception() const { return perception_; }
  const std::vector<Word>& inventory() const { return inventory_; }
  const LearningParams& params() const { return params_; }
  const Rng& rng() const { return rng_; }
  Rng& mutable_rng() { return rng_; }

  std::optional<std::size_t> FindWord(std::string_view form) const;
  const Word& word(std::size_t index) const { return inventory_.at(index); }

  PerceivedVector Perceive(const Entity& entity, const PerceivedVector& game_noise) const;

  // Words whose similarity to the topic strictly exceeds their similarity to
  // every context entity, in inventory order.
  std::vector<Candidate> Candidates(const PerceivedVector& topic,
                                    std::span<const PerceivedVector> context) const;

  // Utters the candidate with the highest score * power, inventing a word
  // when there is none.
  ProductionResult Produce(const PerceivedVector& topic,
                           std::span<const PerceivedVector> context);
  // Production without invention; utterance is empty without candidates.
  ProductionResult ProduceReadOnly(const PerceivedVector& topic,
                                   std::span<const PerceivedVector> context) const;

  const Word& Invent(const PerceivedVector& topic);
  // Throws DuplicateForm when the form is already known.
  const Word& Adopt(const WordForm& form, const PerceivedVector& topic);

  // Index into `scene` of the entity most similar to the meaning of `form`,
  // lowest index on ties. Empty for unknown forms or when no entity shares a
  // channel with the meaning.
  std::optional<std::size_t> Interpret(std::string_view form,
                                       std::span<const PerceivedVector> scene) const;

  // Success-branch alignment: reward the used word, inhibit the other
  // candidates in proportion to their concept similarity to it, then update
  // its concept. `candidates` may pass a candidate set already computed for
  // the same topic and context. Throws InternalProtocolError for unknown forms.
  void AlignSuccess(std::string_view form, const PerceivedVector& topic,
                    std::span<const PerceivedVector> context,
                    const std::vector<Candidate>* candidates = nullptr);

  // Adds the punishment step to the score of `form`.
  void PunishWord(std::string_view form);

  // Folds the topic into the concept statistics of `form`, then rewards the
  // weights of the best discriminating channel subset and punishes the other
  // shared channels.
  void UpdateConcept(std::string_view form, const PerceivedVector& topic,
                     std::span<const PerceivedVector> context);

  // Removes sensors; concepts keep their statistics for lost channels.
  // Throws UnknownSensor if a channel is not currently sensed, or
  // std::invalid_argument if no sensor would remain.
  void LoseSensors(std::span<const ChannelId> lost);

  // Direct inventory restoration for checkpoints.
  void RestoreInventory(std::vector<Word> words);

 private:
  std::size_t RequireWord(std::string_view form) const;
  Word& AddWord(WordForm form, const PerceivedVector& topic);
  std::size_t Choose(const std::vector<Candidate>& candidates) const;

  AgentId id_;
  std::vector<ChannelId> sensors_;
  PerceptionProfile perception_;
  Rng rng_;
  LearningParams params_;
  std::vector<Word> inventory_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Wrong pointing: both agents punish the word; only the listener updates its
// concept, using the topic revealed by the speaker.
void AlignFailureWrongPointing(Agent& speaker, Agent& listener, std::string_view form,
                               const PerceivedVector& listener_topic,
                               std::span<const PerceivedVector> listener_context);

// Unknown word: the speaker punishes the word, the listener adopts it.
void AlignFailureUnknownWord(Agent& speaker, Agent& listener, const WordForm& form,
                             const PerceivedVector& listener_topic);

}  // namespace langgame

#endif  // LANGGAME_AGENT_H_
