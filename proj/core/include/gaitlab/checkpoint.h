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

// Policy checkpoints: a JSON document holding the flat parameter vector, the
// network layout, the iteration it was taken at, and the full experiment
// config with its hash.

#ifndef GAITLAB_CHECKPOINT_H_
#define GAITLAB_CHECKPOINT_H_

#include <string>

#include "gaitlab/experiment_config.h"
#include "gaitlab/trainer.h"

namespace gaitlab {

inline constexpr int kCheckpointVersion = 1;

struct Checkpoint {
  LocomotionPolicy policy;
  int iteration = -1;
  ExperimentConfig config;
  std::string config_hash;  // ConfigHash(config)
};

std::string SerializeCheckpoint(const Checkpoint& ckpt);

// Throws Error on malformed content, a layout/parameter count mismatch, or
// when the stored hash differs from the recomputed one.
Checkpoint ParseCheckpoint(const std::string& text);

void SaveCheckpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint LoadCheckpoint(const std::string& path);

}  // namespace gaitlab

#endif  // GAITLAB_CHECKPOINT_H_
