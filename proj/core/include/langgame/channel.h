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

#ifndef LANGGAME_CHANNEL_H_
#define LANGGAME_CHANNEL_H_

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace langgame {

// Identifier of a sensor channel. The numeric value is the channel's position
// in its ChannelSpace; ids compare in registration order, which is the
// canonical channel order used for every deterministic tie-break.
class ChannelId {
 public:
  constexpr ChannelId() = default;
  constexpr explicit ChannelId(std::uint32_t index) : index_(index) {}

  constexpr std::uint32_t index() const { return index_; }

  friend constexpr auto operator<=>(ChannelId, ChannelId) = default;

 private:
  std::uint32_t index_ = 0;
};

// The global channel namespace of an experiment. Names are unique and ids are
// stable for the lifetime of the space; channels can be added, never removed.
class ChannelSpace {
 public:
  ChannelSpace() = default;
  explicit ChannelSpace(const std::vector<std::string>& names);

  // Returns the id of `name`, registering it if it is new.
  ChannelId Intern(std::string_view name);
  std::optional<ChannelId> Find(std::string_view name) const;
  // Throws DataError for unknown names.
  ChannelId Require(std::string_view name) const;

  const std::string& Name(ChannelId id) const { return names_.at(id.index()); }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }

  std::vector<ChannelId> All() const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, ChannelId> ids_;
};

// Channel values as observed by one agent (or the objective feature vector of
// an entity). Dense over the channel space; absent channels hold NaN.
class PerceivedVector {
 public:
  PerceivedVector() = default;
  explicit PerceivedVector(std::size_t width)
      : values_(width, std::numeric_limits<double>::quiet_NaN()) {}
  PerceivedVector(std::initializer_list<std::pair<ChannelId, double>> values);

  bool Has(ChannelId id) const {
    return id.index() < values_.size() && values_[id.index()] == values_[id.index()];
  }
  double operator[](ChannelId id) const { return values_[id.index()]; }
  void Set(ChannelId id, double value);

  std::size_t width() const { return values_.size(); }
  // Number of present channels.
  std::size_t Count() const;
  std::vector<ChannelId> Channels() const;

  friend bool operator==(const PerceivedVector&, const PerceivedVector&);

 private:
  std::vector<double> values_;
};

}  // namespace langgame

#endif  // LANGGAME_CHANNEL_H_
