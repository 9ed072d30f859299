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

// Experiment configuration: one JSON document with nested blocks
//
//   {
//     "seed": 0,
//     "output_dir": "runs/example",
//     "reward": {...}, "robot": {...}, "sim": {...},
//     "domain_randomization": {...}, "train": {...}, "curriculum": {...}
//   }
//
// Every key is optional and defaults to the struct default. Unknown keys and
// wrongly typed values are rejected with a ConfigError naming the dotted
// field path. Ranges are written as two-element arrays [lower, upper].

#ifndef GAITLAB_EXPERIMENT_CONFIG_H_
#define GAITLAB_EXPERIMENT_CONFIG_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "gaitlab/curriculum.h"
#include "gaitlab/planar_sim.h"
#include "gaitlab/reward.h"
#include "gaitlab/trainer.h"

namespace gaitlab {

struct ExperimentConfig {
  std::uint64_t seed = 0;  // root seed; overrides train.seed
  std::string output_dir;
  RewardConfig reward;
  RobotModel robot;
  EnvParams sim;
  DomainRandomization domain_randomization;
  TrainConfig train;
  Curriculum curriculum;

  // Validates every block. Throws ConfigError.
  void Validate() const;

  SimSetup Setup() const { return {robot, sim, domain_randomization}; }
  // The train block with the root seed applied.
  TrainConfig Train() const;
};

// Parses and validates. Throws ConfigError (field path "" for malformed
// JSON).
ExperimentConfig ParseExperimentConfig(std::string_view json_text);

// Reads a file and parses it. A missing or unreadable file throws
// ConfigError whose message names the path.
ExperimentConfig LoadExperimentConfig(const std::string& path);

// Canonical JSON: every field written, keys sorted, shortest round-trip
// numbers. Parsing the dump reproduces the config exactly.
std::string DumpExperimentConfig(const ExperimentConfig& config, int indent = -1);

// 64-bit FNV-1a of the compact canonical dump, as 16 lowercase hex digits.
std::string ConfigHash(const ExperimentConfig& config);

std::uint64_t Fnv1a64(std::string_view bytes);

}  // namespace gaitlab

#endif  // GAITLAB_EXPERIMENT_CONFIG_H_
