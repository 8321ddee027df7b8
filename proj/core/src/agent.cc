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

#include <algorithm>
#include <stdexcept>

#include "langgame/errors.h"

namespace langgame {

WordForm::WordForm(std::string text) : text_(std::move(text)) {
  if (!IsWellFormed(text_)) {
    throw std::invalid_argument("'" + text_ + "' is not a valid word form");
  }
}

bool WordForm::IsWellFormed(std::string_view text) {
  if (text.size() != 2 * kSyllables) return false;
  for (std::size_t i = 0; i < text.size(); i += 2) {
    if (kConsonants.find(text[i]) == std::string_view::npos) return false;
    if (kVowels.find(text[i + 1]) == std::string_view::npos) return false;
  }
  return true;
}

WordForm GenerateWordForm(Rng& rng,
                          const std::function<bool(const std::string&)>& taken) {
  std::string text(2 * WordForm::kSyllables, ' ');
  do {
    for (std::size_t i = 0; i < text.size(); i += 2) {
      text[i] = WordForm::kConsonants[rng.UniformIndex(WordForm::kConsonants.size())];
      text[i + 1] = WordForm::kVowels[rng.UniformIndex(WordForm::kVowels.size())];
    }
  } while (taken(text));
  return WordForm(text);
}

Agent::Agent(AgentId id, std::vector<ChannelId> sensors, PerceptionProfile perception,
             Rng rng, LearningParams params)
    : id_(id),
      sensors_(std::move(sensors)),
      perception_(std::move(perception)),
      rng_(rng),
      params_(params) {
  std::sort(sensors_.begin(), sensors_.end());
  sensors_.erase(std::unique(sensors_.begin(), sensors_.end()), sensors_.end());
  if (sensors_.empty()) throw std::invalid_argument("an agent needs at least one sensor");
}

std::optional<std::size_t> Agent::FindWord(std::string_view form) const {
  auto it = index_.find(std::string(form));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Agent::RequireWord(std::string_view form) const {
  if (auto index = FindWord(form)) return *index;
  throw InternalProtocolError("agent " + std::to_string(id_) + " has no word '" +
                              std::string(form) + "'");
}

PerceivedVector Agent::Perceive(const Entity& entity,
                                const PerceivedVector& game_noise) const {
  return langgame::Perceive(sensors_, perception_, game_noise, entity);
}

std::vector<Candidate> Agent::Candidates(const PerceivedVector& topic,
                                         std::span<const PerceivedVector> context) const {
  const ConceptParams& cp = params_.concept_params;
  std::vector<Candidate> candidates;
  for (std::size_t w = 0; w < inventory_.size(); ++w) {
    const auto& meaning = inventory_[w].meaning;
    auto to_topic = TryEntityConceptSimilarity(meaning, topic, cp);
    if (!to_topic) continue;
    double closest = 0.0;
    bool distinct = true;
    for (const auto& entity : context) {
      auto sim = TryEntityConceptSimilarity(meaning, entity, cp);
      if (!sim) continue;
      if (*sim >= *to_topic) {
        distinct = false;
        break;
      }
      closest = std::max(closest, *sim);
    }
    if (distinct) candidates.push_back({w, *to_topic - closest});
  }
  return candidates;
}

std::size_t Agent::Choose(const std::vector<Candidate>& candidates) const {
  // Inventory order is invention order, and forms are unique, so the first
  // maximum already honours both tie-breaks.
  std::size_t best = 0;
  double best_adequacy = -1.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double adequacy =
        inventory_[candidates[i].word].score * candidates[i].power;
    if (adequacy > best_adequacy) {
      best_adequacy = adequacy;
      best = i;
    }
  }
  return candidates[best].word;
}

ProductionResult Agent::ProduceReadOnly(const PerceivedVector& topic,
                                        std::span<const PerceivedVector> context) const {
  ProductionResult result;
  result.candidates = Candidates(topic, context);
  if (!result.candidates.empty()) {
    const std::size_t chosen = Choose(result.candidates);
    result.used_word = chosen;
    result.utterance = inventory_[chosen].form;
  }
  return result;
}

ProductionResult Agent::Produce(const PerceivedVector& topic,
                                std::span<const PerceivedVector> context) {
  ProductionResult result = ProduceReadOnly(topic, context);
  if (!result.utterance) {
    const Word& word = Invent(topic);
    result.used_word = inventory_.size() - 1;
    result.utterance = word.form;
    result.invented = true;
  }
  return result;
}

Word& Agent::AddWord(WordForm form, const PerceivedVector& topic) {
  index_.emplace(form.text(), inventory_.size());
  inventory_.push_back(Word{
      std::move(form),
      ConceptRepresentation::FromObservation(topic, params_.initial_std,
                                             params_.initial_weight_logit),
      params_.initial_score});
  return inventory_.back();
}

const Word& Agent::Invent(const PerceivedVector& topic) {
  WordForm form = GenerateWordForm(
      rng_, [this](const std::string& text) { return index_.contains(text); });
  return AddWord(std::move(form), topic);
}

const Word& Agent::Adopt(const WordForm& form, const PerceivedVector& topic) {
  if (FindWord(form.text())) {
    throw DuplicateForm("agent " + std::to_string(id_) + " already knows '" +
                        form.text() + "'");
  }
  return AddWord(form, topic);
}

std::optional<std::size_t> Agent::Interpret(std::string_view form,
                                            std::span<const PerceivedVector> scene) const {
  auto index = FindWord(form);
  if (!index) return std::nullopt;
  const auto& meaning = inventory_[*index].meaning;
  std::optional<std::size_t> pointed;
  double best = 0.0;
  for (std::size_t e = 0; e < scene.size(); ++e) {
    auto sim = TryEntityConceptSimilarity(meaning, scene[e], params_.concept_params);
    if (sim && (!pointed || *sim > best)) {
      pointed = e;
      best = *sim;
    }
  }
  return pointed;
}

void Agent::AlignSuccess(std::string_view form, const PerceivedVector& topic,
                         std::span<const PerceivedVector> context,
                         const std::vector<Candidate>* candidates) {
  const std::size_t used = RequireWord(form);
  std::vector<Candidate> own;
  if (candidates == nullptr) {
    own = Candidates(topic, context);
    candidates = &own;
  }

  Word& used_word = inventory_[used];
  used_word.score = std::min(1.0, used_word.score + params_.score_reward);
  for (const Candidate& candidate : *candidates) {
    if (candidate.word == used) continue;
    Word& competitor = inventory_[candidate.word];
    double similarity = 0.0;
    try {
      similarity = ConceptConceptSimilarity(competitor.meaning, used_word.meaning,
                                            params_.concept_params);
    } catch (const IncomparableChannels&) {
      continue;
    }
    competitor.score =
        std::clamp(competitor.score + params_.inhibition * similarity, 0.0, 1.0);
  }
  UpdateConcept(form, topic, context);
}

void Agent::PunishWord(std::string_view form) {
  Word& word = inventory_[RequireWord(form)];
  word.score = std::clamp(word.score + params_.score_punishment, 0.0, 1.0);
}

void Agent::UpdateConcept(std::string_view form, const PerceivedVector& topic,
                          std::span<const PerceivedVector> context) {
  Word& word = inventory_[RequireWord(form)];
  ConceptRepresentation updated = word.meaning;
  std::vector<ConceptRepresentation::Entry> entries = updated.entries();
  for (auto& [id, stat] : entries) {
    if (topic.Has(id)) stat = WelfordUpdate(stat, topic[id]);
  }
  updated = ConceptRepresentation(std::move(entries));

  const ConceptParams& cp = params_.concept_params;
  const std::vector<ChannelId> shared = SharedChannels(updated, topic, context);
  if (!shared.empty()) {
    const std::vector<ChannelId> best = BestChannelSubset(updated, topic, context, cp);
    for (ChannelId id : shared) {
      ChannelStat* stat = updated.Find(id);
      const bool rewarded = std::binary_search(best.begin(), best.end(), id);
      *stat = ShiftWeight(*stat,
                          rewarded ? params_.weight_reward : params_.weight_punishment, cp);
    }
  }
  word.meaning = std::move(updated);
}

void Agent::LoseSensors(std::span<const ChannelId> lost) {
  std::vector<ChannelId> remaining = sensors_;
  for (ChannelId id : lost) {
    auto it = std::lower_bound(remaining.begin(), remaining.end(), id);
    if (it == remaining.end() || *it != id) {
      throw UnknownSensor("agent " + std::to_string(id_) + " has no sensor with id " +
                          std::to_string(id.index()));
    }
    remaining.erase(it);
  }
  if (remaining.empty()) {
    throw std::invalid_argument("agent " + std::to_string(id_) +
                                " would be left without sensors");
  }
  sensors_ = std::move(remaining);
}

void Agent::RestoreInventory(std::vector<Word> words) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!index.emplace(words[i].form.text(), i).second) {
      throw DuplicateForm("duplicate form '" + words[i].form.text() + "' in inventory");
    }
  }
  inventory_ = std::move(words);
  index_ = std::move(index);
}

void AlignFailureWrongPointing(Agent& speaker, Agent& listener, std::string_view form,
                               const PerceivedVector& listener_topic,
                               std::span<const PerceivedVector> listener_context) {
  speaker.PunishWord(form);
  listener.PunishWord(form);
  listener.UpdateConcept(form, listener_topic, listener_context);
}

void AlignFailureUnknownWord(Agent& speaker, Agent& listener, const WordForm& form,
                             const PerceivedVector& listener_topic) {
  speaker.PunishWord(form.text());
  listener.Adopt(form, listener_topic);
}

}  // namespace langgame
