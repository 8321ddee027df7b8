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

// Communicative success, linguistic coherence and inventory size over
// rolling windows, plus time-series export and cross-run aggregation.

#ifndef LANGGAME_METRICS_H_
#define LANGGAME_METRICS_H_

#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "langgame/agent.h"
#include "langgame/record.h"

namespace langgame {

inline constexpr std::size_t kDefaultWindow = 1000;

// Fixed-capacity FIFO of per-game observations.
class RollingWindow {
 public:
  explicit RollingWindow(std::size_t capacity = kDefaultWindow);

  void Push(double value);
  // Mean of the entries present; empty when there are none.
  std::optional<double> Mean() const;
  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::deque<double> entries_;
};

// Mean success over the records (the caller selects the window).
std::optional<double> CommunicativeSuccess(std::span<const GameRecord> window);
// Mean coherence over records that carry a coherence value.
std::optional<double> LinguisticCoherence(std::span<const GameRecord> window);

// Whether `listener`, given its own perception of the same topic and context,
// would have uttered `utterance`. Has no side effects.
bool CoherenceProbe(const Agent& listener, const std::optional<WordForm>& utterance,
                    const PerceivedVector& listener_topic,
                    std::span<const PerceivedVector> listener_context);

// Forms an agent uttered in its last `capacity` speaker turns, with counts so
// the number of distinct forms is available in O(1).
class SpeakerHistory {
 public:
  explicit SpeakerHistory(std::size_t capacity = kDefaultWindow) : capacity_(capacity) {}

  void Push(const std::string& form);
  std::size_t Distinct() const { return counts_.size(); }
  std::size_t size() const { return forms_.size(); }

 private:
  std::size_t capacity_;
  std::deque<std::string> forms_;
  std::unordered_map<std::string, std::size_t> counts_;
};

// Mean number of distinct forms over agents that have spoken at least once.
std::optional<double> InventorySize(std::span<const SpeakerHistory> histories);

struct MetricsSnapshot {
  std::optional<double> success;
  std::optional<double> coherence;
  std::optional<double> inventory_size;
};

nlohmann::ordered_json SnapshotToJson(const MetricsSnapshot& snapshot);

// Streaming computation of the three metrics from the record stream.
class MetricsTracker {
 public:
  MetricsTracker(std::size_t population_size, std::size_t window = kDefaultWindow);

  void Observe(const GameRecord& record);
  MetricsSnapshot Snapshot() const;

  std::uint64_t games() const { return games_; }
  // Whole-stream averages (inventory size is the current value).
  MetricsSnapshot Overall() const;
  // Largest inventory size seen at any observation.
  std::optional<double> PeakInventorySize() const { return peak_inventory_; }

 private:
  RollingWindow success_;
  RollingWindow coherence_;
  std::vector<SpeakerHistory> histories_;
  std::uint64_t games_ = 0;
  std::uint64_t successes_ = 0;
  std::uint64_t coherence_games_ = 0;
  std::uint64_t coherent_ = 0;
  std::optional<double> peak_inventory_;
};

// CSV time series "game,success,coherence,inventory_size", one row each time
// the game index is a multiple of the stride. Absent values are empty cells.
class SeriesWriter {
 public:
  SeriesWriter(const std::filesystem::path& path, std::uint64_t stride);

  // `tracker` must already have observed `record`.
  void Observe(const GameRecord& record, const MetricsTracker& tracker);
  void Close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::uint64_t stride_;
};

// Replays `records` through a fresh tracker and writes the series.
void ExportSeries(std::span<const GameRecord> records, std::size_t population_size,
                  std::uint64_t stride, const std::filesystem::path& path);

// Aggregates run summaries: every numeric leaf present in all summaries gets
// {"mean", "two_std", "n"} with the sample standard deviation (0 for one run).
// Keys are dotted paths into the summaries.
nlohmann::ordered_json AggregateSummaries(std::span<const nlohmann::json> summaries);

// Writes "metric,mean,two_std,n" rows of an aggregate.
void WriteAggregateTable(const nlohmann::ordered_json& aggregate,
                         const std::filesystem::path& path);

}  // namespace langgame

#endif  // LANGGAME_METRICS_H_
