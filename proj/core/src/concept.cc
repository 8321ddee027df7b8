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

#include "langgame/concept.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "langgame/errors.h"

namespace langgame {
namespace {

// exp(-36) is the largest power that still leaves 1 / (1 + exp(-36)) strictly
// below 1.0 in double precision.
constexpr double kMaxWeightExponent = 36.0;

double ClampLogit(double logit, double slope) {
  const double bound = kMaxWeightExponent / slope;
  return std::clamp(logit, -bound, bound);
}

}  // namespace

double Sigmoid(double logit, double slope) {
  return 1.0 / (1.0 + std::exp(-slope * logit));
}

double ChannelStat::Std(double floor) const {
  return std::max(std::sqrt(m2 / static_cast<double>(count)), floor);
}

ChannelStat ChannelStat::Seed(double value, double initial_std,
                              double weight_logit) {
  return ChannelStat{.mean = value,
                     .m2 = initial_std * initial_std,
                     .count = 1,
                     .weight_logit = weight_logit};
}

ConceptRepresentation::ConceptRepresentation(std::vector<Entry> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  auto dup = std::adjacent_find(
      entries_.begin(), entries_.end(),
      [](const Entry& a, const Entry& b) { return a.first == b.first; });
  if (dup != entries_.end()) {
    throw std::invalid_argument("duplicate channel in concept representation");
  }
}

ConceptRepresentation ConceptRepresentation::FromObservation(
    const PerceivedVector& observation, double initial_std, double weight_logit) {
  std::vector<Entry> entries;
  for (ChannelId id : observation.Channels()) {
    entries.emplace_back(id, ChannelStat::Seed(observation[id], initial_std,
                                               weight_logit));
  }
  return ConceptRepresentation(std::move(entries));
}

const ChannelStat* ConceptRepresentation::Find(ChannelId id) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), id,
      [](const Entry& e, ChannelId key) { return e.first < key; });
  if (it == entries_.end() || it->first != id) return nullptr;
  return &it->second;
}

ChannelStat* ConceptRepresentation::Find(ChannelId id) {
  return const_cast<ChannelStat*>(std::as_const(*this).Find(id));
}

double ChannelSimilarity(const ChannelStat& stat, double value,
                         const ConceptParams& params) {
  const double z = (value - stat.mean) / stat.Std(params.std_floor);
  return std::exp(-std::abs(z));
}

std::optional<double> TryEntityConceptSimilarity(
    const ConceptRepresentation& meaning, const PerceivedVector& observation,
    const ConceptParams& params) {
  double weighted = 0.0;
  double total_weight = 0.0;
  for (const auto& [id, stat] : meaning.entries()) {
    if (!observation.Has(id)) continue;
    const double weight = stat.Weight(params.sigmoid_slope);
    weighted += weight * ChannelSimilarity(stat, observation[id], params);
    total_weight += weight;
  }
  if (total_weight == 0.0) return std::nullopt;
  return weighted / total_weight;
}

double EntityConceptSimilarity(const ConceptRepresentation& meaning,
                               const PerceivedVector& observation,
                               const ConceptParams& params) {
  if (auto sim = TryEntityConceptSimilarity(meaning, observation, params)) {
    return *sim;
  }
  throw IncomparableChannels(
      "concept and observation share no channel");
}

double HellingerSimilarity(Gaussian a, Gaussian b) {
  const double var_sum = a.std * a.std + b.std * b.std;
  const double diff = a.mean - b.mean;
  const double coefficient = std::sqrt(2.0 * a.std * b.std / var_sum) *
                             std::exp(-diff * diff / (4.0 * var_sum));
  // 1 - sqrt(1 - bc), rewritten to avoid cancellation when bc is tiny.
  const double bc = std::min(coefficient, 1.0);
  return bc / (1.0 + std::sqrt(1.0 - bc));
}

double ConceptConceptSimilarity(const ConceptRepresentation& a,
                                const ConceptRepresentation& b,
                                const ConceptParams& params) {
  const double slope = params.sigmoid_slope;
  auto total = [slope](const ConceptRepresentation& c) {
    double sum = 0.0;
    for (const auto& [id, stat] : c.entries()) sum += stat.Weight(slope);
    return sum;
  };
  const double total_a = total(a);
  const double total_b = total(b);

  double similarity = 0.0;
  bool shared = false;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() && ib != b.entries().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      const ChannelStat& sa = ia->second;
      const ChannelStat& sb = ib->second;
      const double nwa = sa.Weight(slope) / total_a;
      const double nwb = sb.Weight(slope) / total_b;
      const double hellinger =
          HellingerSimilarity({sa.mean, sa.Std(params.std_floor)},
                              {sb.mean, sb.Std(params.std_floor)});
      similarity += hellinger * (1.0 - std::abs(nwa - nwb)) * ((nwa + nwb) / 2.0);
      shared = true;
      ++ia;
      ++ib;
    }
  }
  if (!shared) throw IncomparableChannels("concepts share no channel");
  return similarity;
}

ChannelStat WelfordUpdate(ChannelStat stat, double value) {
  stat.count += 1;
  const double delta = value - stat.mean;
  stat.mean += delta / static_cast<double>(stat.count);
  stat.m2 += delta * (value - stat.mean);
  return stat;
}

ChannelStat ShiftWeight(ChannelStat stat, double step, const ConceptParams& params) {
  stat.weight_logit = ClampLogit(stat.weight_logit + step, params.sigmoid_slope);
  return stat;
}

double DiscriminativePower(const ConceptRepresentation& meaning,
                           const PerceivedVector& topic,
                           std::span<const PerceivedVector> context,
                           const ConceptParams& params) {
  const double to_topic = EntityConceptSimilarity(meaning, topic, params);
  double closest = 0.0;
  for (const auto& entity : context) {
    closest = std::max(closest, EntityConceptSimilarity(meaning, entity, params));
  }
  return to_topic - closest;
}

std::vector<ChannelId> SharedChannels(const ConceptRepresentation& meaning,
                                      const PerceivedVector& topic,
                                      std::span<const PerceivedVector> context) {
  std::vector<ChannelId> shared;
  for (const auto& [id, stat] : meaning.entries()) {
    if (!topic.Has(id)) continue;
    bool everywhere = std::all_of(context.begin(), context.end(),
                                  [id](const PerceivedVector& e) { return e.Has(id); });
    if (everywhere) shared.push_back(id);
  }
  return shared;
}

std::vector<ChannelId> PositiveChannels(const ConceptRepresentation& meaning,
                                        const PerceivedVector& topic,
                                        std::span<const PerceivedVector> context,
                                        const ConceptParams& params) {
  std::vector<ChannelId> positive;
  for (ChannelId id : SharedChannels(meaning, topic, context)) {
    const ChannelStat& stat = *meaning.Find(id);
    const double to_topic = ChannelSimilarity(stat, topic[id], params);
    bool wins = std::all_of(context.begin(), context.end(), [&](const PerceivedVector& e) {
      return to_topic > ChannelSimilarity(stat, e[id], params);
    });
    if (wins) positive.push_back(id);
  }
  return positive;
}

double SubsetDiscriminativePower(const ConceptRepresentation& meaning,
                                 std::span<const ChannelId> subset,
                                 const PerceivedVector& topic,
                                 std::span<const PerceivedVector> context,
                                 const ConceptParams& params) {
  if (subset.empty()) throw std::invalid_argument("empty channel subset");
  const double n = static_cast<double>(subset.size());
  auto mean_similarity = [&](const PerceivedVector& x) {
    double sum = 0.0;
    for (ChannelId id : subset) {
      const ChannelStat* stat = meaning.Find(id);
      if (stat == nullptr || !x.Has(id)) {
        throw IncomparableChannels("subset channel missing from concept or entity");
      }
      sum += ChannelSimilarity(*stat, x[id], params);
    }
    return sum / n;
  };
  const double to_topic = mean_similarity(topic);
  double closest = 0.0;
  for (const auto& entity : context) closest = std::max(closest, mean_similarity(entity));
  return to_topic - closest;
}

namespace {

double Floored(double power) {
  return std::floor(power / kSubsetPowerResolution) * kSubsetPowerResolution;
}

// Branch-and-bound search for BestChannelSubset. Channel similarities are
// precomputed once; every node of the search tree is a candidate subset made
// of the mandatory channels plus a combination of optional ones.
class SubsetSearch {
 public:
  SubsetSearch(std::vector<ChannelId> mandatory, std::vector<ChannelId> optional,
               const std::vector<ChannelId>& channels,
               const std::vector<double>& topic_sims,
               const std::vector<std::vector<double>>& context_sims)
      : mandatory_(std::move(mandatory)), optional_(std::move(optional)) {
    // Bounds on rounding error, scaled to the largest similarity involved.
    double scale = 0.0;
    for (double t : topic_sims) scale = std::max(scale, std::abs(t));
    for (const auto& sims : context_sims) {
      for (double c : sims) scale = std::max(scale, std::abs(c));
    }
    slack_ = 16.0 * static_cast<double>(channels.size() + 4) *
             std::numeric_limits<double>::epsilon() * scale;
    auto position = [&](ChannelId id) {
      return static_cast<std::size_t>(
          std::lower_bound(channels.begin(), channels.end(), id) - channels.begin());
    };
    entities_ = context_sims.size();
    base_sums_.assign(entities_, 0.0);
    for (ChannelId id : mandatory_) {
      const std::size_t p = position(id);
      for (std::size_t k = 0; k < entities_; ++k) {
        base_sums_[k] += topic_sims[p] - context_sims[k][p];
      }
    }
    // Per-entity gains of each optional channel, plus the optional channels
    // of each entity ordered by decreasing gain for the bound.
    gains_.assign(entities_, std::vector<double>(optional_.size()));
    order_.assign(entities_, std::vector<std::size_t>(optional_.size()));
    for (std::size_t k = 0; k < entities_; ++k) {
      for (std::size_t j = 0; j < optional_.size(); ++j) {
        const std::size_t p = position(optional_[j]);
        gains_[k][j] = topic_sims[p] - context_sims[k][p];
      }
      std::iota(order_[k].begin(), order_[k].end(), 0);
      std::stable_sort(order_[k].begin(), order_[k].end(),
                       [&](std::size_t x, std::size_t y) {
                         return gains_[k][x] > gains_[k][y];
                       });
    }
  }

  template <typename Evaluate>
  std::vector<ChannelId> Run(Evaluate&& evaluate) {
    evaluate_ = [&](const std::vector<ChannelId>& subset) { return evaluate(subset); };
    std::vector<std::size_t> chosen;
    Visit(chosen, 0, base_sums_);
    return best_;
  }

 private:

  std::vector<ChannelId> Materialize(const std::vector<std::size_t>& chosen) const {
    std::vector<ChannelId> subset = mandatory_;
    for (std::size_t j : chosen) subset.push_back(optional_[j]);
    std::sort(subset.begin(), subset.end());
    return subset;
  }

  void Consider(const std::vector<std::size_t>& chosen) {
    std::vector<ChannelId> subset = Materialize(chosen);
    const double value = Floored(evaluate_(subset));
    bool better = false;
    if (best_.empty() || value > best_value_) {
      better = true;
    } else if (value == best_value_) {
      better = subset.size() < best_.size() ||
               (subset.size() == best_.size() && subset < best_);
    }
    if (better) {
      best_value_ = value;
      best_ = std::move(subset);
    }
  }

  // Upper bound on the value of any strict descendant of the node holding
  // `size` channels with per-entity gain sums `sums`, extended only with
  // optional channels at positions >= `next`.
  double Bound(std::size_t size, std::size_t next,
               const std::vector<double>& sums) const {
    double bound = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < entities_; ++k) {
      double best = -std::numeric_limits<double>::infinity();
      double acc = sums[k];
      std::size_t n = size;
      for (std::size_t j : order_[k]) {
        if (j < next) continue;
        acc += gains_[k][j];
        ++n;
        best = std::max(best, acc / static_cast<double>(n));
      }
      bound = std::min(bound, best);
    }
    return bound;
  }

  void Visit(std::vector<std::size_t>& chosen, std::size_t next,
             const std::vector<double>& sums) {
    const std::size_t size = mandatory_.size() + chosen.size();
    if (size > 0) {
      double approx = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < entities_; ++k) {
        approx = std::min(approx, sums[k] / static_cast<double>(size));
      }
      if (best_.empty() || approx >= best_value_ - slack_) Consider(chosen);
    }
    if (next >= optional_.size()) return;
    if (!best_.empty() && entities_ > 0) {
      const double reach = Floored(Bound(size, next, sums) + slack_);
      // Descendants are larger than the node.
      if (reach < best_value_ || (reach == best_value_ && size + 1 > best_.size())) return;
    }
    std::vector<double> child(entities_);
    for (std::size_t j = next; j < optional_.size(); ++j) {
      for (std::size_t k = 0; k < entities_; ++k) child[k] = sums[k] + gains_[k][j];
      chosen.push_back(j);
      Visit(chosen, j + 1, child);
      chosen.pop_back();
    }
  }

  std::vector<ChannelId> mandatory_;
  std::vector<ChannelId> optional_;
  std::size_t entities_ = 0;
  double slack_ = 0.0;
  std::vector<double> base_sums_;
  std::vector<std::vector<double>> gains_;
  std::vector<std::vector<std::size_t>> order_;
  std::function<double(const std::vector<ChannelId>&)> evaluate_;
  std::vector<ChannelId> best_;
  double best_value_ = 0.0;
};

}  // namespace

std::vector<ChannelId> BestChannelSubset(const ConceptRepresentation& meaning,
                                         const PerceivedVector& topic,
                                         std::span<const PerceivedVector> context,
                                         const ConceptParams& params) {
  std::vector<ChannelId> shared = SharedChannels(meaning, topic, context);
  if (shared.empty()) {
    throw IncomparableChannels("no channel shared by concept, topic and context");
  }

  std::vector<double> topic_sims(shared.size());
  std::vector<std::vector<double>> context_sims(context.size(),
                                                std::vector<double>(shared.size()));
  for (std::size_t p = 0; p < shared.size(); ++p) {
    const ChannelStat& stat = *meaning.Find(shared[p]);
    topic_sims[p] = ChannelSimilarity(stat, topic[shared[p]], params);
    for (std::size_t k = 0; k < context.size(); ++k) {
      context_sims[k][p] = ChannelSimilarity(stat, context[k][shared[p]], params);
    }
  }

  std::vector<ChannelId> universe = shared;
  if (params.max_subset_channels && shared.size() > *params.max_subset_channels) {
    // Keep the channels with the highest standalone power, ties by id.
    std::vector<std::pair<double, ChannelId>> ranked;
    for (std::size_t p = 0; p < shared.size(); ++p) {
      double closest = 0.0;
      for (const auto& sims : context_sims) closest = std::max(closest, sims[p]);
      ranked.emplace_back(topic_sims[p] - closest, shared[p]);
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    ranked.resize(std::max<std::size_t>(*params.max_subset_channels, 1));
    universe.clear();
    for (const auto& [power, id] : ranked) universe.push_back(id);
    std::sort(universe.begin(), universe.end());
  }

  std::vector<ChannelId> mandatory;
  std::vector<ChannelId> optional;
  for (std::size_t p = 0; p < shared.size(); ++p) {
    if (!std::binary_search(universe.begin(), universe.end(), shared[p])) continue;
    bool wins = true;
    for (const auto& sims : context_sims) wins = wins && topic_sims[p] > sims[p];
    (wins ? mandatory : optional).push_back(shared[p]);
  }

  // Canonical evaluation, summing in channel order, so that the chosen subset
  // does not depend on the path the search took to reach it.
  auto evaluate = [&](const std::vector<ChannelId>& subset) {
    const double n = static_cast<double>(subset.size());
    auto mean_of = [&](const std::vector<double>& sims) {
      double sum = 0.0;
      for (ChannelId id : subset) {
        const std::size_t p = static_cast<std::size_t>(
            std::lower_bound(shared.begin(), shared.end(), id) - shared.begin());
        sum += sims[p];
      }
      return sum / n;
    };
    const double to_topic = mean_of(topic_sims);
    double closest = 0.0;
    for (const auto& sims : context_sims) closest = std::max(closest, mean_of(sims));
    return to_topic - closest;
  };

  SubsetSearch search(std::move(mandatory), std::move(optional), shared, topic_sims,
                      context_sims);
  return search.Run(evaluate);
}

}  // namespace langgame
