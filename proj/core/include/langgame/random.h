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

#ifndef LANGGAME_RANDOM_H_
#define LANGGAME_RANDOM_H_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace langgame {

// Deterministic random stream. Distributions are implemented here rather than
// with <random> distribution objects so that draws are identical across
// standard library implementations and the full state is the engine state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  // Seed of an independent substream identified by `label` and `index`.
  static std::uint64_t DeriveSeed(std::uint64_t master, std::string_view label,
                                  std::uint64_t index = 0);
  static Rng Substream(std::uint64_t master, std::string_view label,
                       std::uint64_t index = 0) {
    return Rng(DeriveSeed(master, label, index));
  }

  std::uint64_t NextU64() { return engine_(); }
  // Uniform on [0, n); n must be positive.
  std::uint64_t UniformIndex(std::uint64_t n);
  // Uniform on [lo, hi] inclusive.
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);
  // Uniform on [0, 1).
  double UniformReal();
  double Normal(double mean, double stddev);

  std::string SaveState() const;
  void LoadState(const std::string& state);

  friend bool operator==(const Rng& a, const Rng& b) { return a.engine_ == b.engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace langgame

#endif  // LANGGAME_RANDOM_H_
