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

#include "gaitlab/trainer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "gaitlab/errors.h"
#include "gaitlab/observation.h"

namespace gaitlab {
namespace {

// Stream indices for MixSeed, kept apart so adding draws to one stream
// never shifts another.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kEpisodeStream = 1000;
constexpr std::uint64_t kValidationStream = 2;

struct EpisodeSpec {
  Command cmd;
  std::uint64_t seed = 0;
};

}  // namespace

void TrainConfig::Validate() const {
  if (population < 1) throw ConfigError("train.population", "must be >= 1");
  if (!(sigma >= 0)) throw ConfigError("train.sigma", "must be >= 0");
  if (!(learning_rate > 0)) {
    throw ConfigError("train.learning_rate", "must be > 0");
  }
  if (!(weight_decay >= 0)) {
    throw ConfigError("train.weight_decay", "must be >= 0");
  }
  if (iterations < 0) throw ConfigError("train.iterations", "must be >= 0");
  if (episodes_per_eval < 1) {
    throw ConfigError("train.episodes_per_eval", "must be >= 1");
  }
  if (episode_steps < 1) throw ConfigError("train.episode_steps", "must be >= 1");
  if (history < 0 || history > 30) {
    throw ConfigError("train.history", "must be in [0, 30]");
  }
  for (int h : hidden) {
    if (h < 1) throw ConfigError("train.hidden", "layer sizes must be >= 1");
  }
  if (!(action_scale > 0)) throw ConfigError("train.action_scale", "must be > 0");
  if (!(velocity_scale > 0)) {
    throw ConfigError("train.velocity_scale", "must be > 0");
  }
  if (!(clock_frequency >= 0)) {
    throw ConfigError("train.clock_frequency", "must be >= 0");
  }
  if (!(clock_gain >= 0)) throw ConfigError("train.clock_gain", "must be >= 0");
  if (!(init_output_gain >= 0)) {
    throw ConfigError("train.init_output_gain", "must be >= 0");
  }
  if (jobs < 0) throw ConfigError("train.jobs", "must be >= 0");
  if (eval_interval < 1) throw ConfigError("train.eval_interval", "must be >= 1");
  if (validation_commands.empty()) {
    throw ConfigError("train.validation_commands", "must not be empty");
  }
  if (validation_steps < 0) {
    throw ConfigError("train.validation_steps", "must be >= 0");
  }
}

std::size_t PolicyInputSize(int history, double clock_frequency) {
  return ObservationSize(history) + (clock_frequency > 0 ? 2 : 0);
}

LocomotionPolicy MakePolicy(const TrainConfig& tc) {
  std::vector<int> sizes;
  sizes.push_back(static_cast<int>(PolicyInputSize(tc.history, tc.clock_frequency)));
  sizes.insert(sizes.end(), tc.hidden.begin(), tc.hidden.end());
  sizes.push_back(kNumJoints);
  LocomotionPolicy p;
  p.net = Policy(sizes);
  Rng rng(MixSeed(tc.seed, kInitStream));
  p.net.InitRandom(rng, tc.init_output_gain);
  p.history = tc.history;
  p.action_scale = tc.action_scale;
  p.velocity_scale = tc.velocity_scale;
  p.clock_frequency = tc.clock_frequency;
  p.clock_gain = tc.clock_gain;
  return p;
}

EpisodeResult Evaluate(const LocomotionPolicy& policy, const SimSetup& setup,
                       Command cmd, std::uint64_t seed, const RewardConfig& c,
                       const RolloutOptions& options) {
  Rng rng(seed);
  const DomainRandomization& dr = setup.dr;
  Episode episode = ResetEpisode(setup.model, setup.env, dr, rng,
                                 [cmd](Rng&) { return cmd; });
  if (!options.randomize_dynamics) {
    episode.env.friction = setup.env.friction;
    episode.env.added_mass = setup.env.added_mass;
  }
  const ObservationNoise noise =
      options.observation_noise ? dr.noise : ObservationNoise{0.0, 0.0, 0.0};

  const JointVector nominal = setup.model.NominalPose();
  ObservationScaling scaling;
  scaling.nominal = nominal;
  scaling.action_scale = policy.action_scale;
  scaling.velocity_scale = policy.velocity_scale;
  ObservationHistory history(policy.history);

  EpisodeResult result;
  RolloutLog& log = result.log;
  log.header.config_hash = options.config_hash;
  log.header.cmd_vx = cmd.vx;
  log.header.cmd_wz = cmd.wz;
  log.header.seed = seed;
  log.header.dt_control = episode.env.control_dt();
  if (options.keep_log) log.samples.reserve(options.steps);

  const double dt = episode.env.control_dt();
  SimState state = episode.state;
  JointVector prev_action = nominal;
  StepSample observed = MakeSample(setup.model, episode.env, state, nominal,
                                   nominal, cmd.vx, cmd.wz);
  observed.action.clear();
  std::vector<double> out(kNumJoints);
  double phase = 0.0;

  for (int k = 0; k < options.steps; ++k) {
    Command current = cmd;
    if (options.ramp_acceleration > 0) {
      const double limit = options.ramp_acceleration * (k * dt);
      current.vx = std::clamp(cmd.vx, -limit, limit);
    }
    std::vector<double> obs =
        BuildObservation(observed, history, current, scaling);
    if (policy.clock_frequency > 0) {
      obs.push_back(std::sin(phase));
      obs.push_back(std::cos(phase));
      phase += 2.0 * std::numbers::pi * dt *
               (policy.clock_frequency + policy.clock_gain * std::abs(current.vx));
      phase = std::fmod(phase, 2.0 * std::numbers::pi);
    }
    history.Push(MakeFrame(observed, current, scaling));
    policy.net.Forward(obs, out);
    const JointVector action = ActionToTargets(out, nominal, policy.action_scale);

    ControlStepResult step;
    try {
      step = ControlStep(setup.model, episode.env, state, action, prev_action,
                         current.vx, current.wz, noise, rng);
    } catch (const SimulationDivergedError&) {
      result.diverged = true;
      result.terminated_early = true;
      break;
    }
    state = step.state;
    result.episode_return += TotalReward(step.sample, c).r_total * dt;
    ++result.steps;
    const bool collided = step.sample.collision_flag;
    if (options.keep_log) log.samples.push_back(std::move(step.sample));
    observed = std::move(step.observed);
    prev_action = action;
    if (collided) {
      result.terminated_early = true;
      break;
    }
  }
  log.header.terminated_early = result.terminated_early;
  log.header.diverged = result.diverged;
  return result;
}

double RescoreReturn(const RolloutLog& log, const RewardConfig& c) {
  double r = 0.0;
  for (const StepSample& s : log.samples) {
    r += TotalReward(s, c).r_total * log.header.dt_control;
  }
  return r;
}

TrainResult Train(const TrainConfig& tc, const SimSetup& setup,
                  const RewardConfig& reward, const Curriculum& curriculum,
                  const TrainingObserver& observer) {
  tc.Validate();
  reward.Validate();
  curriculum.Validate();
  setup.model.Validate();
  setup.env.Validate();
  setup.dr.Validate();

  const auto start = std::chrono::steady_clock::now();
  const LocomotionPolicy initial = MakePolicy(tc);

  EsConfig es_config;
  es_config.pairs = tc.population;
  es_config.sigma = tc.sigma;
  es_config.learning_rate = tc.learning_rate;
  es_config.rule = tc.optimizer;
  es_config.weight_decay = tc.weight_decay;
  es_config.seed = tc.seed;
  EvolutionStrategy es(es_config,
                       {initial.net.params().begin(), initial.net.params().end()});

  RolloutOptions train_options;
  train_options.steps = tc.episode_steps;
  train_options.keep_log = false;

  RolloutOptions validation_options = train_options;
  validation_options.steps =
      tc.validation_steps > 0 ? tc.validation_steps : tc.episode_steps;
  validation_options.randomize_dynamics = false;

  const double dt = setup.env.control_dt();
  const double threshold = curriculum.threshold_fraction *
                           MaxReturnProxy(reward, tc.episode_steps, dt);

  TrainResult result;
  result.policy = initial;
  result.best_validation = -std::numeric_limits<double>::infinity();
  result.curriculum = curriculum;

  // Mean return of `params` over `specs`; each worker owns its policy copy.
  auto score = [&](const std::vector<double>& params,
                   const std::vector<EpisodeSpec>& specs,
                   const RolloutOptions& options) {
    LocomotionPolicy p = initial;
    p.net.set_params(params);
    double sum = 0.0;
    for (const EpisodeSpec& spec : specs) {
      sum += Evaluate(p, setup, spec.cmd, spec.seed, reward, options).episode_return;
    }
    return sum / static_cast<double>(specs.size());
  };

  std::vector<EpisodeSpec> validation_specs;
  {
    Rng rng(MixSeed(tc.seed, kValidationStream));
    for (double v : tc.validation_commands) {
      validation_specs.push_back({{v, 0.0}, rng()});
    }
  }

  double smoothed = 0.0;
  for (int it = 0; it < tc.iterations; ++it) {
    // Common random numbers: every candidate sees the same episodes.
    Rng rng(MixSeed(tc.seed, kEpisodeStream + static_cast<std::uint64_t>(it)));
    std::vector<EpisodeSpec> specs;
    for (const Command& cmd :
         SampleCommandBatch(result.curriculum, tc.episodes_per_eval, rng)) {
      specs.push_back({cmd, rng()});
    }

    auto candidates = es.Ask(it);
    candidates.push_back(es.params());  // the mean policy, scored last
    std::vector<double> fitness(candidates.size());
    ParallelFor(candidates.size(), tc.jobs, [&](std::size_t i) {
      fitness[i] = score(candidates[i], specs, train_options);
    });
    const double center = fitness.back();
    fitness.pop_back();

    TrainingRecord record;
    record.iteration = it;
    record.mean_return = center;
    record.best_return = *std::max_element(fitness.begin(), fitness.end());
    record.validation_return = std::numeric_limits<double>::quiet_NaN();

    es.Tell(fitness);
    smoothed = it == 0 ? center
                       : curriculum.smoothing * smoothed +
                             (1.0 - curriculum.smoothing) * center;
    result.curriculum = UpdateCurriculum(result.curriculum, smoothed, threshold);
    record.curriculum_lin = result.curriculum.lin;

    if ((it + 1) % tc.eval_interval == 0 || it + 1 == tc.iterations) {
      std::vector<double> per_command(validation_specs.size());
      ParallelFor(validation_specs.size(), tc.jobs, [&](std::size_t i) {
        per_command[i] = score(es.params(), {validation_specs[i]}, validation_options);
      });
      double v = 0.0;
      for (double x : per_command) v += x / static_cast<double>(per_command.size());
      record.validation_return = v;
      if (v > result.best_validation) {
        result.best_validation = v;
        result.best_iteration = it;
        result.policy.net.set_params(es.params());
      }
    }
    record.wall_time = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    result.history.push_back(record);
    if (observer) observer(record);
  }
  result.final_params = es.params();
  return result;
}

}  // namespace gaitlab
