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

#ifndef LANGGAME_ERRORS_H_
#define LANGGAME_ERRORS_H_

#include <stdexcept>
#include <string>

namespace langgame {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A concept and a perceived vector (or two concepts) share no channel.
class IncomparableChannels : public Error {
 public:
  using Error::Error;
};

// Adoption of a form the agent already knows.
class DuplicateForm : public Error {
 public:
  using Error::Error;
};

// Sensor removal for a channel the agent is not endowed with.
class UnknownSensor : public Error {
 public:
  using Error::Error;
};

// Alignment asked to update a word the agent does not have.
class InternalProtocolError : public Error {
 public:
  using Error::Error;
};

// Agent sensors and entity channels do not overlap.
class ImperceptibleEntity : public Error {
 public:
  using Error::Error;
};

// Feature tables, scene files and manifests.
class DataError : public Error {
 public:
  using Error::Error;
};

// Configuration validation failure. `field` is a dotted path into the config
// document, e.g. "population.sensors.count".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class CheckpointError : public Error {
 public:
  using Error::Error;
};

}  // namespace langgame

#endif  // LANGGAME_ERRORS_H_
