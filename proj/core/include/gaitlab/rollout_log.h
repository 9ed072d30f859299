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

#ifndef GAITLAB_ROLLOUT_LOG_H_
#define GAITLAB_ROLLOUT_LOG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "gaitlab/reward.h"

namespace gaitlab {

inline constexpr int kLogSchemaVersion = 1;

struct RolloutHeader {
  int schema_version = kLogSchemaVersion;
  std::string config_hash;
  double cmd_vx = 0.0;
  double cmd_vy = 0.0;
  double cmd_wz = 0.0;
  std::uint64_t seed = 0;
  double dt_control = 0.02;
  // "sim" for simulator rollouts; free-form for ingested logs.
  std::string source = "sim";
  bool terminated_early = false;
  bool diverged = false;
};

// Sample k covers the interval (t_k - dt, t_k].
struct RolloutLog {
  RolloutHeader header;
  std::vector<StepSample> samples;

  // Checks strictly increasing t, constant spacing (1e-9) and per-sample
  // vector shapes. Throws SchemaError naming the first bad record (1-based,
  // header is record 0).
  void Validate() const;

  double duration() const {
    return static_cast<double>(samples.size()) * header.dt_control;
  }
};

// Half-open interval [begin, end) on sample times.
struct TimeWindow {
  double begin = 0.0;
  double end = 0.0;
};

// Window covering every sample of the log.
TimeWindow FullWindow(const RolloutLog& log);

// Window that drops the leading `fraction` of the episode duration.
TimeWindow SteadyStateWindow(const RolloutLog& log, double fraction = 0.2);

}  // namespace gaitlab

#endif  // GAITLAB_ROLLOUT_LOG_H_
