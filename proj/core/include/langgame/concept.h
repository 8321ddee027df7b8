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

// Concept representations and the numeric machinery around them: weighted
// entity/concept similarity, Hellinger-based concept/concept similarity,
// discriminative power, online channel statistics and sigmoid channel weights.

#ifndef LANGGAME_CONCEPT_H_
#define LANGGAME_CONCEPT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "langgame/channel.h"

namespace langgame {

// Numeric knobs shared by every concept computation.
struct ConceptParams {
  // Lower bound applied to the derived standard deviation before it is used
  // in a z-score or a Hellinger coefficient.
  double std_floor = 1e-4;
  // Slope of the weight sigmoid: weight = 1 / (1 + exp(-slope * logit)).
  double sigmoid_slope = 0.5;
  // When set, channel-subset search only considers this many channels, the
  // ones with the highest standalone discriminative power.
  std::optional<std::size_t> max_subset_channels;
};

double Sigmoid(double logit, double slope);

// Per-channel Gaussian prototype. Spread is kept as a Welford accumulator and
// the weight as the abscissa of the weight sigmoid.
struct ChannelStat {
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t count = 1;
  double weight_logit = 0.0;

  // Population standard deviation sqrt(m2 / count), floored.
  double Std(double floor) const;
  double Weight(double slope) const { return Sigmoid(weight_logit, slope); }

  // A prototype seeded by a single observation whose derived std equals
  // `initial_std`.
  static ChannelStat Seed(double value, double initial_std, double weight_logit);

  friend bool operator==(const ChannelStat&, const ChannelStat&) = default;
};

// Ordered map from channel to ChannelStat, stored as a sorted vector.
class ConceptRepresentation {
 public:
  using Entry = std::pair<ChannelId, ChannelStat>;

  ConceptRepresentation() = default;
  // Entries may come in any order; duplicate channels are rejected.
  explicit ConceptRepresentation(std::vector<Entry> entries);

  // One channel per present value of `observation`, each seeded with
  // ChannelStat::Seed.
  static ConceptRepresentation FromObservation(const PerceivedVector& observation,
                                               double initial_std,
                                               double weight_logit);

  const ChannelStat* Find(ChannelId id) const;
  ChannelStat* Find(ChannelId id);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const ConceptRepresentation&,
                         const ConceptRepresentation&) = default;

 private:
  std::vector<Entry> entries_;
};

// exp(-|x - mean| / std) for one channel.
double ChannelSimilarity(const ChannelStat& stat, double value,
                         const ConceptParams& params = {});

// Weighted mean of channel similarities over the channels shared by `meaning`
// and `observation`; weights are renormalized over that intersection. Throws
// IncomparableChannels when nothing is shared.
double EntityConceptSimilarity(const ConceptRepresentation& meaning,
                               const PerceivedVector& observation,
                               const ConceptParams& params = {});

// Same as EntityConceptSimilarity but returns nullopt instead of throwing.
std::optional<double> TryEntityConceptSimilarity(
    const ConceptRepresentation& meaning, const PerceivedVector& observation,
    const ConceptParams& params = {});

struct Gaussian {
  double mean = 0.0;
  double std = 1.0;
};

// 1 - H(a, b), with H the Hellinger distance between two univariate normals.
double HellingerSimilarity(Gaussian a, Gaussian b);

// Sum over shared channels of Hellinger similarity times weight agreement
// times mean weight. Weights are normalized over each concept's own channels.
// Throws IncomparableChannels when no channel is shared.
double ConceptConceptSimilarity(const ConceptRepresentation& a,
                                const ConceptRepresentation& b,
                                const ConceptParams& params = {});

ChannelStat WelfordUpdate(ChannelStat stat, double value);

// Moves the weight logit by `step`. The logit is clamped to +-36 / slope so the
// weight stays strictly inside (0, 1) in double precision.
ChannelStat ShiftWeight(ChannelStat stat, double step,
                        const ConceptParams& params = {});

// Similarity to the topic minus the highest similarity to any context entity.
// Positive iff the concept singles out the topic.
double DiscriminativePower(const ConceptRepresentation& meaning,
                           const PerceivedVector& topic,
                           std::span<const PerceivedVector> context,
                           const ConceptParams& params = {});

// Channels of `meaning` observed on the topic and on every context entity.
std::vector<ChannelId> SharedChannels(const ConceptRepresentation& meaning,
                                      const PerceivedVector& topic,
                                      std::span<const PerceivedVector> context);

// Channels whose own similarity to the topic beats the similarity to every
// context entity.
std::vector<ChannelId> PositiveChannels(const ConceptRepresentation& meaning,
                                        const PerceivedVector& topic,
                                        std::span<const PerceivedVector> context,
                                        const ConceptParams& params = {});

// Discriminative power of `meaning` restricted to `subset`, with equal weight
// on each channel of the subset. `subset` must be sorted and non-empty.
double SubsetDiscriminativePower(const ConceptRepresentation& meaning,
                                 std::span<const ChannelId> subset,
                                 const PerceivedVector& topic,
                                 std::span<const PerceivedVector> context,
                                 const ConceptParams& params = {});

// Powers are compared on this grid when choosing a channel subset; values
// are floored to a multiple of it.
inline constexpr double kSubsetPowerResolution = 0x1p-40;

// The channel subset with the highest SubsetDiscriminativePower, floored to
// kSubsetPowerResolution, among all subsets that contain every positive
// channel. Ties go to the smaller subset, then to the lexicographically
// smaller id sequence. Exact; uses
// branch-and-bound over the optional channels. Returns a sorted list.
std::vector<ChannelId> BestChannelSubset(const ConceptRepresentation& meaning,
                                         const PerceivedVector& topic,
                                         std::span<const PerceivedVector> context,
                                         const ConceptParams& params = {});

}  // namespace langgame

#endif  // LANGGAME_CONCEPT_H_
