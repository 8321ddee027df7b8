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

#include "langgame/metrics.h"

#include <cmath>
#include <numeric>

#include "langgame/errors.h"

namespace langgame {

RollingWindow::RollingWindow(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("window capacity must be positive");
}

void RollingWindow::Push(double value) {
  if (entries_.size() == capacity_) entries_.pop_front();
  entries_.push_back(value);
}

std::optional<double> RollingWindow::Mean() const {
  if (entries_.empty()) return std::nullopt;
  return std::accumulate(entries_.begin(), entries_.end(), 0.0) /
         static_cast<double>(entries_.size());
}

std::optional<double> CommunicativeSuccess(std::span<const GameRecord> window) {
  if (window.empty()) return std::nullopt;
  std::size_t wins = 0;
  for (const auto& record : window) wins += record.success;
  return static_cast<double>(wins) / static_cast<double>(window.size());
}

std::optional<double> LinguisticCoherence(std::span<const GameRecord> window) {
  std::size_t probed = 0;
  std::size_t coherent = 0;
  for (const auto& record : window) {
    if (!record.coherent) continue;
    ++probed;
    coherent += *record.coherent;
  }
  if (probed == 0) return std::nullopt;
  return static_cast<double>(coherent) / static_cast<double>(probed);
}

bool CoherenceProbe(const Agent& listener, const std::optional<WordForm>& utterance,
                    const PerceivedVector& listener_topic,
                    std::span<const PerceivedVector> listener_context) {
  if (!utterance) return false;
  const ProductionResult own = listener.ProduceReadOnly(listener_topic, listener_context);
  return own.utterance && *own.utterance == *utterance;
}

void SpeakerHistory::Push(const std::string& form) {
  if (forms_.size() == capacity_) {
    auto it = counts_.find(forms_.front());
    if (--it->second == 0) counts_.erase(it);
    forms_.pop_front();
  }
  forms_.push_back(form);
  ++counts_[form];
}

std::optional<double> InventorySize(std::span<const SpeakerHistory> histories) {
  std::size_t speakers = 0;
  std::size_t distinct = 0;
  for (const auto& history : histories) {
    if (history.size() == 0) continue;
    ++speakers;
    distinct += history.Distinct();
  }
  if (speakers == 0) return std::nullopt;
  return static_cast<double>(distinct) / static_cast<double>(speakers);
}

nlohmann::ordered_json SnapshotToJson(const MetricsSnapshot& snapshot) {
  auto value = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json json;
  json["success"] = value(snapshot.success);
  json["coherence"] = value(snapshot.coherence);
  json["inventory_size"] = value(snapshot.inventory_size);
  return json;
}

MetricsTracker::MetricsTracker(std::size_t population_size, std::size_t window)
    : success_(window),
      coherence_(window),
      histories_(population_size, SpeakerHistory(window)) {}

void MetricsTracker::Observe(const GameRecord& record) {
  ++games_;
  success_.Push(record.success ? 1.0 : 0.0);
  successes_ += record.success;
  if (record.coherent) {
    coherence_.Push(*record.coherent ? 1.0 : 0.0);
    ++coherence_games_;
    coherent_ += *record.coherent;
  }
  if (record.utterance) {
    if (record.speaker >= histories_.size()) {
      throw std::out_of_range("record speaker outside the tracked population");
    }
    histories_[record.speaker].Push(record.utterance->text());
    auto size = InventorySize(histories_);
    if (size && (!peak_inventory_ || *size > *peak_inventory_)) peak_inventory_ = size;
  }
}

MetricsSnapshot MetricsTracker::Snapshot() const {
  return {success_.Mean(), coherence_.Mean(), InventorySize(histories_)};
}

MetricsSnapshot MetricsTracker::Overall() const {
  MetricsSnapshot overall;
  if (games_ > 0) overall.success = static_cast<double>(successes_) / static_cast<double>(games_);
  if (coherence_games_ > 0) {
    overall.coherence =
        static_cast<double>(coherent_) / static_cast<double>(coherence_games_);
  }
  overall.inventory_size = InventorySize(histories_);
  return overall;
}

SeriesWriter::SeriesWriter(const std::filesystem::path& path, std::uint64_t stride)
    : path_(path), out_(path), stride_(stride) {
  if (stride_ == 0) throw std::invalid_argument("series stride must be positive");
  if (!out_) throw DataError("cannot write series file " + path.string());
  out_ << "game,success,coherence,inventory_size\n";
}

void SeriesWriter::Observe(const GameRecord& record, const MetricsTracker& tracker) {
  if (record.game_index % stride_ != 0) return;
  const MetricsSnapshot s = tracker.Snapshot();
  auto cell = [](const std::optional<double>& v) {
    if (!v) return std::string();
    nlohmann::json j = *v;
    return j.dump();
  };
  out_ << record.game_index << ',' << cell(s.success) << ',' << cell(s.coherence) << ','
       << cell(s.inventory_size) << '\n';
  if (!out_) throw DataError("failed writing series file " + path_.string());
}

void SeriesWriter::Close() {
  out_.flush();
  if (!out_) throw DataError("failed writing series file " + path_.string());
  out_.close();
}

void ExportSeries(std::span<const GameRecord> records, std::size_t population_size,
                  std::uint64_t stride, const std::filesystem::path& path) {
  MetricsTracker tracker(population_size);
  SeriesWriter writer(path, stride);
  for (const auto& record : records) {
    tracker.Observe(record);
    writer.Observe(record, tracker);
  }
  writer.Close();
}

namespace {

void Flatten(const nlohmann::json& json, const std::string& prefix,
             std::map<std::string, double>& out) {
  if (json.is_number()) {
    out[prefix] = json.get<double>();
  } else if (json.is_object()) {
    for (const auto& [key, value] : json.items()) {
      Flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (json.is_array()) {
    for (std::size_t i = 0; i < json.size(); ++i) {
      Flatten(json[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  }
}

}  // namespace

nlohmann::ordered_json AggregateSummaries(std::span<const nlohmann::json> summaries) {
  nlohmann::ordered_json aggregate = nlohmann::ordered_json::object();
  if (summaries.empty()) return aggregate;
  std::vector<std::map<std::string, double>> flat(summaries.size());
  for (std::size_t i = 0; i < summaries.size(); ++i) Flatten(summaries[i], "", flat[i]);

  for (const auto& [key, first] : flat[0]) {
    std::vector<double> values;
    for (const auto& run : flat) {
      auto it = run.find(key);
      if (it == run.end()) break;
      values.push_back(it->second);
    }
    if (values.size() != flat.size()) continue;
    const double n = static_cast<double>(values.size());
    // Offsets from the first value keep identical runs exact.
    double offset = 0.0;
    for (double v : values) offset += v - values.front();
    const double mean = values.front() + offset / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double std = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    aggregate[key] = {{"mean", mean}, {"two_std", 2.0 * std}, {"n", values.size()}};
  }
  return aggregate;
}

void WriteAggregateTable(const nlohmann::ordered_json& aggregate,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write aggregate table " + path.string());
  out << "metric,mean,two_std,n\n";
  for (const auto& [key, stats] : aggregate.items()) {
    out << key << ',' << stats["mean"].dump() << ',' << stats["two_std"].dump() << ','
        << stats["n"].dump() << '\n';
  }
  if (!out) throw DataError("failed writing aggregate table " + path.string());
}

}  // namespace langgame
