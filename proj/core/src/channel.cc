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

#include "langgame/channel.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "langgame/errors.h"

namespace langgame {

ChannelSpace::ChannelSpace(const std::vector<std::string>& names) {
  for (const auto& name : names) {
    if (Find(name)) throw DataError("duplicate channel name '" + name + "'");
    Intern(name);
  }
}

ChannelId ChannelSpace::Intern(std::string_view name) {
  if (name.empty()) throw DataError("channel names must be non-empty");
  std::string key(name);
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  ChannelId id(static_cast<std::uint32_t>(names_.size()));
  names_.push_back(key);
  ids_.emplace(std::move(key), id);
  return id;
}

std::optional<ChannelId> ChannelSpace::Find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

ChannelId ChannelSpace::Require(std::string_view name) const {
  if (auto id = Find(name)) return *id;
  throw DataError("unknown channel '" + std::string(name) + "'");
}

std::vector<ChannelId> ChannelSpace::All() const {
  std::vector<ChannelId> out;
  out.reserve(names_.size());
  for (std::uint32_t i = 0; i < names_.size(); ++i) out.emplace_back(i);
  return out;
}

PerceivedVector::PerceivedVector(
    std::initializer_list<std::pair<ChannelId, double>> values) {
  for (const auto& [id, value] : values) Set(id, value);
}

void PerceivedVector::Set(ChannelId id, double value) {
  if (id.index() >= values_.size()) {
    values_.resize(id.index() + 1, std::numeric_limits<double>::quiet_NaN());
  }
  values_[id.index()] = value;
}

std::size_t PerceivedVector::Count() const {
  std::size_t n = 0;
  for (double v : values_) n += !std::isnan(v);
  return n;
}

std::vector<ChannelId> PerceivedVector::Channels() const {
  std::vector<ChannelId> out;
  for (std::uint32_t i = 0; i < values_.size(); ++i) {
    if (!std::isnan(values_[i])) out.emplace_back(i);
  }
  return out;
}

// Bitwise comparison over present channels; trailing absent slots are ignored.
bool operator==(const PerceivedVector& a, const PerceivedVector& b) {
  const std::size_t n = std::max(a.values_.size(), b.values_.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    ChannelId id(i);
    if (a.Has(id) != b.Has(id)) return false;
    if (a.Has(id) && std::bit_cast<std::uint64_t>(a[id]) !=
                         std::bit_cast<std::uint64_t>(b[id])) {
      return false;
    }
  }
  return true;
}

}  // namespace langgame
