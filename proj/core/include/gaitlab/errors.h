// Copyright 2026 The gaitlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAITLAB_ERRORS_H_
#define GAITLAB_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace gaitlab {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vector arguments with inconsistent lengths or otherwise malformed inputs.
class InputShapeError : public Error {
 public:
  using Error::Error;
};

// Cost of transport requested over a window with (near) zero net distance.
class DegenerateMotionError : public Error {
 public:
  using Error::Error;
};

// Not enough touchdown events to segment a contact schedule into strides.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// The simulator produced a non-finite state; the episode must be reset.
class SimulationDivergedError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration. `field()` is the dotted path of the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Malformed rollout log. `record()` is the 0-based line index (0 = header).
class SchemaError : public Error {
 public:
  SchemaError(std::size_t record, const std::string& message)
      : Error("record " + std::to_string(record) + ": " + message),
        record_(record) {}

  std::size_t record() const { return record_; }

 private:
  std::size_t record_;
};

// Optimizer aborted, e.g. parameters became non-finite.
class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace gaitlab

#endif  // GAITLAB_ERRORS_H_
