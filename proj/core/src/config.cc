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

#include "langgame/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "langgame/errors.h"

namespace langgame {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string Join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string Index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Reads the members of one JSON object, remembering which keys were used so
// that leftovers can be reported.
class Fields {
 public:
  Fields(const json& value, std::string path) : value_(value), path_(std::move(path)) {
    if (!value_.is_object()) {
      throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }
  }

  const json* Find(const std::string& key) {
    auto it = value_.find(key);
    if (it == value_.end()) return nullptr;
    used_.insert(key);
    if (it->is_null()) return nullptr;
    return &*it;
  }

  const json& Require(const std::string& key) {
    const json* found = Find(key);
    if (found == nullptr) throw ConfigError(Field(key), "is required");
    return *found;
  }

  std::string Field(const std::string& key) const { return Join(path_, key); }

  double Number(const std::string& key, double fallback) {
    const json* found = Find(key);
    if (found == nullptr) return fallback;
    if (!found->is_number()) throw ConfigError(Field(key), "expected a number");
    const double value = found->get<double>();
    if (!std::isfinite(value)) throw ConfigError(Field(key), "must be finite");
    return value;
  }

  std::uint64_t Count(const std::string& key, std::uint64_t fallback) {
    const json* found = Find(key);
    if (found == nullptr) return fallback;
    return CountValue(*found, Field(key));
  }

  std::optional<std::uint64_t> OptionalCount(const std::string& key) {
    const json* found = Find(key);
    if (found == nullptr) return std::nullopt;
    return CountValue(*found, Field(key));
  }

  bool Bool(const std::string& key, bool fallback) {
    const json* found = Find(key);
    if (found == nullptr) return fallback;
    if (!found->is_boolean()) throw ConfigError(Field(key), "expected true or false");
    return found->get<bool>();
  }

  std::string String(const std::string& key, std::string fallback) {
    const json* found = Find(key);
    if (found == nullptr) return fallback;
    return StringValue(*found, Field(key));
  }

  std::vector<std::string> Strings(const std::string& key) {
    const json* found = Find(key);
    if (found == nullptr) return {};
    return StringList(*found, Field(key));
  }

  void Done() const {
    for (const auto& [key, unused] : value_.items()) {
      if (!used_.contains(key)) throw ConfigError(Field(key), "unknown key");
    }
  }

  static std::uint64_t CountValue(const json& value, const std::string& field) {
    if (value.is_number_unsigned()) return value.get<std::uint64_t>();
    if (value.is_number_integer()) {
      if (value.get<std::int64_t>() < 0) throw ConfigError(field, "must not be negative");
      return static_cast<std::uint64_t>(value.get<std::int64_t>());
    }
    if (value.is_number_float()) {
      const double d = value.get<double>();
      if (d >= 0.0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
    }
    throw ConfigError(field, "expected a non-negative integer");
  }

  static std::string StringValue(const json& value, const std::string& field) {
    if (!value.is_string()) throw ConfigError(field, "expected a string");
    return value.get<std::string>();
  }

  static std::vector<std::string> StringList(const json& value, const std::string& field) {
    if (!value.is_array()) throw ConfigError(field, "expected a list of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
      out.push_back(StringValue(value[i], Index(field, i)));
    }
    return out;
  }

 private:
  const json& value_;
  std::string path_;
  std::set<std::string> used_;
};

DatasetSource ParseSource(const json& value, const std::string& path) {
  Fields f(value, path);
  DatasetSource source;
  const std::string type = Fields::StringValue(f.Require("type"), f.Field("type"));
  if (type == "table") {
    source.type = DatasetSource::Type::kTable;
    source.path = Fields::StringValue(f.Require("path"), f.Field("path"));
    const std::string delimiter = f.String("delimiter", ",");
    if (delimiter.size() != 1) {
      throw ConfigError(f.Field("delimiter"), "must be a single character");
    }
    source.schema.delimiter = delimiter[0];
    source.schema.columns = f.Strings("columns");
    source.schema.exclude = f.Strings("exclude");
    if (auto channels = f.OptionalCount("channels")) {
      source.schema.expected_channels = static_cast<std::size_t>(*channels);
    }
  } else if (type == "synthetic") {
    source.type = DatasetSource::Type::kSynthetic;
    SyntheticSpec& s = source.synthetic;
    s.clusters = f.Count("clusters", s.clusters);
    s.channels = f.Count("channels", s.channels);
    s.entities_per_cluster = f.Count("entities_per_cluster", s.entities_per_cluster);
    s.cluster_std = f.Number("cluster_std", s.cluster_std);
    s.channel_prefix = f.String("channel_prefix", s.channel_prefix);
    s.first_channel_index = f.Count("first_channel_index", s.first_channel_index);
    source.seed = f.OptionalCount("seed");
    if (s.clusters == 0) throw ConfigError(f.Field("clusters"), "must be at least 1");
    if (s.channels == 0) throw ConfigError(f.Field("channels"), "must be at least 1");
    if (s.entities_per_cluster == 0) {
      throw ConfigError(f.Field("entities_per_cluster"), "must be at least 1");
    }
    if (s.cluster_std < 0.0) throw ConfigError(f.Field("cluster_std"), "must not be negative");
    if (s.channel_prefix.empty()) {
      throw ConfigError(f.Field("channel_prefix"), "must not be empty");
    }
  } else {
    throw ConfigError(f.Field("type"), "expected \"table\" or \"synthetic\", got \"" + type + "\"");
  }
  f.Done();
  return source;
}

SplitConfig ParseSplit(const json* value, const std::string& path) {
  SplitConfig split;
  if (value == nullptr) return split;
  Fields f(*value, path);
  split.train_fraction = f.Number("train_fraction", split.train_fraction);
  split.train_scenes = f.Count("train_scenes", split.train_scenes);
  split.test_scenes = f.Count("test_scenes", split.test_scenes);
  if (const json* sizes = f.Find("scene_size")) {
    const std::string field = f.Field("scene_size");
    if (!sizes->is_array() || sizes->size() != 2) {
      throw ConfigError(field, "expected [min, max]");
    }
    split.scene_size.min = Fields::CountValue((*sizes)[0], Index(field, 0));
    split.scene_size.max = Fields::CountValue((*sizes)[1], Index(field, 1));
  }
  if (const json* file = f.Find("train_scene_file")) {
    split.train_scene_file = Fields::StringValue(*file, f.Field("train_scene_file"));
  }
  if (const json* files = f.Find("test_scene_files")) {
    const std::string field = f.Field("test_scene_files");
    if (!files->is_object()) throw ConfigError(field, "expected an object of name: path");
    for (const auto& [name, file] : files->items()) {
      split.test_scene_files[name] = Fields::StringValue(file, Join(field, name));
    }
  }
  f.Done();
  return split;
}

void ValidateSplit(const SplitConfig& split, const std::string& path) {
  if (!(split.train_fraction > 0.0 && split.train_fraction < 1.0)) {
    throw ConfigError(Join(path, "train_fraction"), "must lie strictly between 0 and 1");
  }
  if (split.scene_size.min < 2 || split.scene_size.min > split.scene_size.max) {
    throw ConfigError(Join(path, "scene_size"), "expected 2 <= min <= max");
  }
  if (split.train_scene_file.has_value() != !split.test_scene_files.empty()) {
    throw ConfigError(Join(path, split.train_scene_file ? "test_scene_files" : "train_scene_file"),
                      "scene files must give both the training scenes and the test sets");
  }
  if (!split.train_scene_file && split.train_scenes == 0) {
    throw ConfigError(Join(path, "train_scenes"), "must be at least 1");
  }
}

SensorEndowment ParseSensors(const json* value, const std::string& path) {
  SensorEndowment sensors;
  if (value == nullptr) return sensors;
  Fields f(*value, path);
  const std::string mode = f.String("mode", "all");
  if (mode == "all") {
    sensors.mode = SensorEndowment::Mode::kAll;
  } else if (mode == "random") {
    sensors.mode = SensorEndowment::Mode::kRandom;
  } else if (mode == "random_shared") {
    sensors.mode = SensorEndowment::Mode::kRandomShared;
  } else if (mode == "explicit") {
    sensors.mode = SensorEndowment::Mode::kExplicit;
  } else {
    throw ConfigError(f.Field("mode"),
                      "expected all, random, random_shared or explicit, got \"" + mode + "\"");
  }
  sensors.count = f.Count("count", 0);
  if (const json* lists = f.Find("lists")) {
    const std::string field = f.Field("lists");
    if (!lists->is_array()) throw ConfigError(field, "expected a list of sensor lists");
    for (std::size_t i = 0; i < lists->size(); ++i) {
      sensors.lists.push_back(Fields::StringList((*lists)[i], Index(field, i)));
    }
  }
  f.Done();
  const bool random = sensors.mode == SensorEndowment::Mode::kRandom ||
                      sensors.mode == SensorEndowment::Mode::kRandomShared;
  if (random && sensors.count == 0) throw ConfigError(Join(path, "count"), "must be at least 1");
  if (!random && sensors.count != 0) {
    throw ConfigError(Join(path, "count"), "only applies to the random modes");
  }
  if ((sensors.mode == SensorEndowment::Mode::kExplicit) == sensors.lists.empty()) {
    throw ConfigError(Join(path, "lists"), "required by, and only allowed with, mode explicit");
  }
  return sensors;
}

LearningParams ParseLearning(const json* value, const std::string& path) {
  LearningParams p;
  if (value == nullptr) return p;
  Fields f(*value, path);
  p.initial_score = f.Number("initial_score", p.initial_score);
  p.score_reward = f.Number("score_reward", p.score_reward);
  p.score_punishment = f.Number("score_punishment", p.score_punishment);
  p.inhibition = f.Number("inhibition", p.inhibition);
  p.initial_std = f.Number("initial_std", p.initial_std);
  const double initial_weight = f.Number("initial_weight", 0.5);
  p.concept_params.sigmoid_slope = f.Number("sigmoid_slope", p.concept_params.sigmoid_slope);
  p.weight_reward = f.Number("weight_reward", p.weight_reward);
  p.weight_punishment = f.Number("weight_punishment", p.weight_punishment);
  p.concept_params.std_floor = f.Number("std_floor", p.concept_params.std_floor);
  if (auto cap = f.OptionalCount("max_subset_channels")) {
    if (*cap == 0) throw ConfigError(f.Field("max_subset_channels"), "must be at least 1");
    p.concept_params.max_subset_channels = static_cast<std::size_t>(*cap);
  }
  f.Done();

  if (p.initial_score < 0.0 || p.initial_score > 1.0) {
    throw ConfigError(Join(path, "initial_score"), "must lie in [0, 1]");
  }
  if (p.initial_std <= 0.0) throw ConfigError(Join(path, "initial_std"), "must be positive");
  if (p.concept_params.sigmoid_slope <= 0.0) {
    throw ConfigError(Join(path, "sigmoid_slope"), "must be positive");
  }
  if (p.concept_params.std_floor <= 0.0) {
    throw ConfigError(Join(path, "std_floor"), "must be positive");
  }
  if (!(initial_weight > 0.0 && initial_weight < 1.0)) {
    throw ConfigError(Join(path, "initial_weight"),
                      "must lie strictly between 0 and 1 (the sigmoid never reaches 0 or 1)");
  }
  p.initial_weight_logit = WeightLogit(initial_weight, p.concept_params.sigmoid_slope);
  return p;
}

ScheduleEvent ParseEvent(const json& value, const std::string& path) {
  Fields f(value, path);
  ScheduleEvent event;
  event.at = Fields::CountValue(f.Require("at"), f.Field("at"));
  const std::string kind = Fields::StringValue(f.Require("event"), f.Field("event"));
  if (kind == "sensor_defect") {
    event.kind = ScheduleEvent::Kind::kSensorDefect;
    event.lost_per_agent = Fields::CountValue(f.Require("lost_per_agent"), f.Field("lost_per_agent"));
    if (event.lost_per_agent == 0) {
      throw ConfigError(f.Field("lost_per_agent"), "must be at least 1");
    }
  } else if (kind == "switch_dataset") {
    event.kind = ScheduleEvent::Kind::kSwitchDataset;
    event.dataset = Fields::StringValue(f.Require("dataset"), f.Field("dataset"));
  } else if (kind == "freeze") {
    event.kind = ScheduleEvent::Kind::kFreezeLearning;
  } else if (kind == "unfreeze") {
    event.kind = ScheduleEvent::Kind::kUnfreezeLearning;
  } else {
    throw ConfigError(f.Field("event"),
                      "expected sensor_defect, switch_dataset, freeze or unfreeze, got \"" +
                          kind + "\"");
  }
  f.Done();
  return event;
}

EvaluationRequest ParseEvaluation(const json& value, const std::string& path) {
  Fields f(value, path);
  EvaluationRequest request;
  request.after = Fields::CountValue(f.Require("after"), f.Field("after"));
  request.dataset = Fields::StringValue(f.Require("dataset"), f.Field("dataset"));
  request.test_set = f.String("test_set", request.test_set);
  request.games = f.Count("games", 100000);
  request.label = f.String("label", request.dataset);
  f.Done();
  if (request.games == 0) throw ConfigError(Join(path, "games"), "must be at least 1");
  return request;
}

std::string EventName(ScheduleEvent::Kind kind) {
  switch (kind) {
    case ScheduleEvent::Kind::kSensorDefect:
      return "sensor_defect";
    case ScheduleEvent::Kind::kSwitchDataset:
      return "switch_dataset";
    case ScheduleEvent::Kind::kFreezeLearning:
      return "freeze";
    case ScheduleEvent::Kind::kUnfreezeLearning:
      return "unfreeze";
  }
  return {};
}

std::string ModeName(SensorEndowment::Mode mode) {
  switch (mode) {
    case SensorEndowment::Mode::kAll:
      return "all";
    case SensorEndowment::Mode::kRandom:
      return "random";
    case SensorEndowment::Mode::kRandomShared:
      return "random_shared";
    case SensorEndowment::Mode::kExplicit:
      return "explicit";
  }
  return {};
}

}  // namespace

const DatasetConfig* ExperimentConfig::FindDataset(const std::string& dataset) const {
  for (const auto& d : datasets) {
    if (d.name == dataset) return &d;
  }
  return nullptr;
}

double WeightLogit(double initial_weight, double sigmoid_slope) {
  return std::log(initial_weight / (1.0 - initial_weight)) / sigmoid_slope;
}

ExperimentConfig ParseConfig(const json& value) {
  Fields f(value, "");
  ExperimentConfig config;
  config.name = f.String("name", config.name);
  config.seed = f.Count("seed", config.seed);
  config.repetitions = f.Count("repetitions", config.repetitions);
  config.games = f.Count("games", config.games);

  const json& datasets = f.Require("datasets");
  if (!datasets.is_array() || datasets.empty()) {
    throw ConfigError("datasets", "expected a non-empty list of datasets");
  }
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    const std::string path = Index("datasets", i);
    Fields d(datasets[i], path);
    DatasetConfig dataset;
    dataset.name = Fields::StringValue(d.Require("name"), d.Field("name"));
    dataset.source = ParseSource(d.Require("source"), d.Field("source"));
    dataset.split = ParseSplit(d.Find("split"), d.Field("split"));
    d.Done();
    config.datasets.push_back(std::move(dataset));
  }
  config.initial_dataset = f.String("initial_dataset", config.datasets.front().name);

  if (const json* population = f.Find("population")) {
    Fields p(*population, "population");
    config.population_size = p.Count("size", config.population_size);
    config.sensors = ParseSensors(p.Find("sensors"), "population.sensors");
    p.Done();
  }
  config.learning = ParseLearning(f.Find("learning"), "learning");
  if (const json* perception = f.Find("perception")) {
    Fields p(*perception, "perception");
    config.perception.shift_std = p.Number("shift_std", 0.0);
    config.perception.noise_std = p.Number("noise_std", 0.0);
    p.Done();
  }
  if (const json* schedule = f.Find("schedule")) {
    if (!schedule->is_array()) throw ConfigError("schedule", "expected a list of events");
    for (std::size_t i = 0; i < schedule->size(); ++i) {
      config.schedule.push_back(ParseEvent((*schedule)[i], Index("schedule", i)));
    }
  }
  if (const json* evaluations = f.Find("evaluations")) {
    if (!evaluations->is_array()) {
      throw ConfigError("evaluations", "expected a list of evaluations");
    }
    for (std::size_t i = 0; i < evaluations->size(); ++i) {
      config.evaluations.push_back(ParseEvaluation((*evaluations)[i], Index("evaluations", i)));
    }
  }
  if (const json* output = f.Find("output")) {
    Fields o(*output, "output");
    config.output.window = o.Count("window", config.output.window);
    config.output.series_stride = o.Count("series_stride", config.output.series_stride);
    config.output.records = o.Bool("records", config.output.records);
    config.output.checkpoint = o.Bool("checkpoint", config.output.checkpoint);
    o.Done();
  }
  f.Done();
  ValidateConfig(config);
  return config;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open config file " + path.string());
  json value;
  try {
    value = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", path.string() + " is not valid JSON: " + e.what());
  }
  return ParseConfig(value);
}

void ValidateConfig(const ExperimentConfig& config) {
  if (config.repetitions == 0) throw ConfigError("repetitions", "must be at least 1");
  if (config.population_size < 2) throw ConfigError("population.size", "must be at least 2");
  if (config.perception.shift_std < 0.0) {
    throw ConfigError("perception.shift_std", "must not be negative");
  }
  if (config.perception.noise_std < 0.0) {
    throw ConfigError("perception.noise_std", "must not be negative");
  }
  if (config.output.window == 0) throw ConfigError("output.window", "must be at least 1");
  if (config.output.series_stride == 0) {
    throw ConfigError("output.series_stride", "must be at least 1");
  }
  if (config.sensors.mode == SensorEndowment::Mode::kExplicit &&
      config.sensors.lists.size() != config.population_size) {
    throw ConfigError("population.sensors.lists", "expected one list per agent (" +
                                                      std::to_string(config.population_size) + ")");
  }

  std::set<std::string> names;
  for (std::size_t i = 0; i < config.datasets.size(); ++i) {
    if (!names.insert(config.datasets[i].name).second) {
      throw ConfigError(Index("datasets", i) + ".name",
                        "duplicate dataset name '" + config.datasets[i].name + "'");
    }
    ValidateSplit(config.datasets[i].split, Index("datasets", i) + ".split");
  }
  if (!config.FindDataset(config.initial_dataset)) {
    throw ConfigError("initial_dataset", "unknown dataset '" + config.initial_dataset + "'");
  }

  Schedule{config.games, config.schedule}.Validate();
  for (std::size_t i = 0; i < config.schedule.size(); ++i) {
    const auto& event = config.schedule[i];
    if (event.kind == ScheduleEvent::Kind::kSwitchDataset && !config.FindDataset(event.dataset)) {
      throw ConfigError(Index("schedule", i) + ".dataset",
                        "unknown dataset '" + event.dataset + "'");
    }
  }
  for (std::size_t i = 0; i < config.evaluations.size(); ++i) {
    const auto& request = config.evaluations[i];
    const std::string path = Index("evaluations", i);
    const DatasetConfig* dataset = config.FindDataset(request.dataset);
    if (dataset == nullptr) {
      throw ConfigError(path + ".dataset", "unknown dataset '" + request.dataset + "'");
    }
    const bool known = dataset->split.train_scene_file
                           ? dataset->split.test_scene_files.contains(request.test_set)
                           : request.test_set == "test";
    if (!known) {
      throw ConfigError(path + ".test_set", "dataset '" + request.dataset +
                                                "' has no test set '" + request.test_set + "'");
    }
    if (request.after > config.games) {
      throw ConfigError(path + ".after", "must not exceed games (" +
                                             std::to_string(config.games) + ")");
    }
  }
}

ordered_json ConfigToJson(const ExperimentConfig& config) {
  ordered_json out;
  out["name"] = config.name;
  out["seed"] = config.seed;
  out["repetitions"] = config.repetitions;
  out["games"] = config.games;
  out["initial_dataset"] = config.initial_dataset;
  out["datasets"] = ordered_json::array();
  for (const auto& dataset : config.datasets) {
    ordered_json d;
    d["name"] = dataset.name;
    ordered_json source;
    if (dataset.source.type == DatasetSource::Type::kTable) {
      const TableSchema& schema = dataset.source.schema;
      source["type"] = "table";
      source["path"] = dataset.source.path.generic_string();
      source["delimiter"] = std::string(1, schema.delimiter);
      if (!schema.columns.empty()) source["columns"] = schema.columns;
      if (!schema.exclude.empty()) source["exclude"] = schema.exclude;
      if (schema.expected_channels) source["channels"] = *schema.expected_channels;
    } else {
      const SyntheticSpec& s = dataset.source.synthetic;
      source["type"] = "synthetic";
      source["clusters"] = s.clusters;
      source["channels"] = s.channels;
      source["entities_per_cluster"] = s.entities_per_cluster;
      source["cluster_std"] = s.cluster_std;
      source["channel_prefix"] = s.channel_prefix;
      source["first_channel_index"] = s.first_channel_index;
      if (dataset.source.seed) source["seed"] = *dataset.source.seed;
    }
    d["source"] = source;
    const SplitConfig& split = dataset.split;
    ordered_json s;
    s["train_fraction"] = split.train_fraction;
    s["train_scenes"] = split.train_scenes;
    s["test_scenes"] = split.test_scenes;
    s["scene_size"] = {split.scene_size.min, split.scene_size.max};
    if (split.train_scene_file) {
      s["train_scene_file"] = split.train_scene_file->generic_string();
      ordered_json files = ordered_json::object();
      for (const auto& [name, file] : split.test_scene_files) files[name] = file.generic_string();
      s["test_scene_files"] = files;
    }
    d["split"] = s;
    out["datasets"].push_back(d);
  }

  ordered_json sensors;
  sensors["mode"] = ModeName(config.sensors.mode);
  if (config.sensors.count != 0) sensors["count"] = config.sensors.count;
  if (!config.sensors.lists.empty()) sensors["lists"] = config.sensors.lists;
  out["population"] = {{"size", config.population_size}, {"sensors", sensors}};

  const LearningParams& p = config.learning;
  ordered_json learning;
  learning["initial_score"] = p.initial_score;
  learning["score_reward"] = p.score_reward;
  learning["score_punishment"] = p.score_punishment;
  learning["inhibition"] = p.inhibition;
  learning["initial_std"] = p.initial_std;
  learning["initial_weight"] = p.concept_params.sigmoid_slope > 0.0
                                   ? Sigmoid(p.initial_weight_logit, p.concept_params.sigmoid_slope)
                                   : 0.5;
  learning["sigmoid_slope"] = p.concept_params.sigmoid_slope;
  learning["weight_reward"] = p.weight_reward;
  learning["weight_punishment"] = p.weight_punishment;
  learning["std_floor"] = p.concept_params.std_floor;
  if (p.concept_params.max_subset_channels) {
    learning["max_subset_channels"] = *p.concept_params.max_subset_channels;
  }
  out["learning"] = learning;
  out["perception"] = {{"shift_std", config.perception.shift_std},
                       {"noise_std", config.perception.noise_std}};

  out["schedule"] = ordered_json::array();
  for (const auto& event : config.schedule) {
    ordered_json e;
    e["at"] = event.at;
    e["event"] = EventName(event.kind);
    if (event.kind == ScheduleEvent::Kind::kSensorDefect) e["lost_per_agent"] = event.lost_per_agent;
    if (event.kind == ScheduleEvent::Kind::kSwitchDataset) e["dataset"] = event.dataset;
    out["schedule"].push_back(e);
  }
  out["evaluations"] = ordered_json::array();
  for (const auto& request : config.evaluations) {
    out["evaluations"].push_back({{"after", request.after},
                                  {"dataset", request.dataset},
                                  {"test_set", request.test_set},
                                  {"games", request.games},
                                  {"label", request.label}});
  }
  out["output"] = {{"window", config.output.window},
                   {"series_stride", config.output.series_stride},
                   {"records", config.output.records},
                   {"checkpoint", config.output.checkpoint}};
  return out;
}

std::vector<ordered_json> ExpandSweep(const ordered_json& base, const json& grid) {
  if (!grid.is_object()) throw ConfigError("<sweep>", "expected an object of path: [values]");
  std::vector<ordered_json> configs{ConfigToJson(ParseConfig(json::parse(base.dump())))};
  for (const auto& [path, values] : grid.items()) {
    if (!values.is_array() || values.empty()) {
      throw ConfigError("<sweep>." + path, "expected a non-empty list of values");
    }
    const ordered_json::json_pointer pointer("/" + [&] {
      std::string p = path;
      for (auto& c : p) {
        if (c == '.') c = '/';
      }
      return p;
    }());
    std::vector<ordered_json> next;
    for (const auto& config : configs) {
      for (const auto& value : values) {
        ordered_json variant = config;
        if (!variant.contains(pointer.parent_pointer()) ||
            !variant[pointer.parent_pointer()].is_object()) {
          throw ConfigError("<sweep>." + path, "does not name a config section");
        }
        variant[pointer] = value;
        variant["name"] = variant.value("name", std::string("experiment")) + "_" +
                          pointer.back() + "=" + value.dump();
        next.push_back(std::move(variant));
      }
    }
    configs = std::move(next);
  }
  for (const auto& config : configs) ParseConfig(json::parse(config.dump()));
  return configs;
}

}  // namespace langgame
