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

#ifndef GAITLAB_TRAINER_H_
#define GAITLAB_TRAINER_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gaitlab/curriculum.h"
#include "gaitlab/evolution_strategy.h"
#include "gaitlab/planar_sim.h"
#include "gaitlab/policy.h"
#include "gaitlab/reward.h"
#include "gaitlab/rollout_log.h"

namespace gaitlab {

struct TrainConfig {
  int population = 16;  // mirrored pairs per iteration
  double sigma = 0.02;
  double learning_rate = 0.01;
  StepRule optimizer = StepRule::kAdam;
  double weight_decay = 0.0;
  int iterations = 200;
  int episodes_per_eval = 2;
  int episode_steps = 1000;
  std::uint64_t seed = 0;
  int history = 4;
  std::vector<int> hidden = {64, 64};
  double action_scale = 0.6;
  double velocity_scale = 0.05;
  double init_output_gain = 0.1;
  // Appends (sin, cos) of a phase advancing at
  // clock_frequency + clock_gain * |cmd_vx| Hz to the observation; a zero
  // clock_frequency disables the channels.
  double clock_frequency = 0.0;  // Hz
  double clock_gain = 0.0;       // Hz per m/s
  int jobs = 0;  // 0 = hardware concurrency
  // Validation of the current mean policy every `eval_interval` iterations
  // (and after the last one) selects the returned policy.
  int eval_interval = 10;
  std::vector<double> validation_commands = {0.5, 1.0, 1.5};
  int validation_steps = 0;  // 0 = episode_steps

  void Validate() const;
};

struct SimSetup {
  RobotModel model;
  EnvParams env;
  DomainRandomization dr;
};

// Network plus the observation/action conventions it was trained with.
struct LocomotionPolicy {
  Policy net;
  int history = 4;
  double action_scale = 0.6;
  double velocity_scale = 0.05;
  double clock_frequency = 0.0;
  double clock_gain = 0.0;
};

// Network input size for the policy's observation layout.
std::size_t PolicyInputSize(int history, double clock_frequency);

LocomotionPolicy MakePolicy(const TrainConfig& tc);

struct RolloutOptions {
  int steps = 1000;
  // Resample friction and added mass from the domain randomization ranges;
  // otherwise the base environment is used as is.
  bool randomize_dynamics = true;
  bool observation_noise = true;
  // Linear ramp of the command from 0 at this acceleration (m/s^2); 0 = off.
  double ramp_acceleration = 0.0;
  bool keep_log = true;
  std::string config_hash;
};

struct EpisodeResult {
  double episode_return = 0.0;
  RolloutLog log;
  bool terminated_early = false;
  bool diverged = false;
  int steps = 0;
};

// Rolls one episode. return = sum_t r_total(t) dt_control. Early termination
// on body-ground collision; divergence truncates the log and sets the flag.
// Deterministic given the seed.
EpisodeResult Evaluate(const LocomotionPolicy& policy, const SimSetup& setup,
                       Command cmd, std::uint64_t seed, const RewardConfig& c,
                       const RolloutOptions& options);

// Return of a stored log under a (possibly different) reward config.
double RescoreReturn(const RolloutLog& log, const RewardConfig& c);

struct TrainingRecord {
  int iteration = 0;
  double mean_return = 0.0;  // mean policy on this iteration's episodes
  double best_return = 0.0;  // best perturbed candidate
  double curriculum_lin = 0.0;
  double wall_time = 0.0;    // s since training start
  double validation_return = 0.0;  // NaN when not validated this iteration
};

struct TrainResult {
  LocomotionPolicy policy;  // best by validation
  int best_iteration = -1;
  double best_validation = 0.0;
  std::vector<double> final_params;
  Curriculum curriculum;
  std::vector<TrainingRecord> history;
};

using TrainingObserver = std::function<void(const TrainingRecord&)>;

TrainResult Train(const TrainConfig& tc, const SimSetup& setup,
                  const RewardConfig& reward, const Curriculum& curriculum,
                  const TrainingObserver& observer = {});

}  // namespace gaitlab

#endif  // GAITLAB_TRAINER_H_
