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

#include <vector>

#include <benchmark/benchmark.h>

#include "gaitlab/gait_metrics.h"
#include "gaitlab/planar_sim.h"
#include "gaitlab/policy.h"
#include "gaitlab/reward.h"
#include "gaitlab/trainer.h"

namespace gaitlab {
namespace {

void BM_PhysicsStep(benchmark::State& state) {
  RobotModel m;
  EnvParams env;
  SimState s = StandingState(m);
  const JointVector targets = m.NominalPose();
  for (auto _ : state) {
    s = Step(m, env, s, targets);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_PhysicsStep);

void BM_ControlStep(benchmark::State& state) {
  RobotModel m;
  EnvParams env;
  DomainRandomization dr;
  Rng rng(1);
  SimState s = StandingState(m);
  const JointVector a = m.NominalPose();
  for (auto _ : state) {
    ControlStepResult r = ControlStep(m, env, s, a, a, 1.0, 0.0, dr.noise, rng);
    s = r.state;
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ControlStep);

void BM_TotalReward(benchmark::State& state) {
  StepSample s;
  s.cmd_vx = 1.0;
  s.vx = 0.9;
  s.joint_torques.assign(kNumJoints, 3.0);
  s.joint_velocities.assign(kNumJoints, 2.0);
  s.action.assign(kNumJoints, 0.1);
  s.prev_action.assign(kNumJoints, 0.0);
  const RewardConfig c;
  for (auto _ : state) benchmark::DoNotOptimize(TotalReward(s, c));
}
BENCHMARK(BM_TotalReward);

void BM_PolicyForward(benchmark::State& state) {
  const int hidden = static_cast<int>(state.range(0));
  Policy p({140, hidden, hidden, kNumJoints});
  Rng rng(2);
  p.InitRandom(rng);
  const std::vector<double> in(140, 0.1);
  std::vector<double> out(kNumJoints);
  for (auto _ : state) {
    p.Forward(in, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_PolicyForward)->Arg(32)->Arg(64);

void BM_Episode(benchmark::State& state) {
  TrainConfig tc;
  tc.history = 0;
  tc.hidden = {32};
  tc.clock_frequency = 1.5;
  const LocomotionPolicy policy = MakePolicy(tc);
  RolloutOptions opt;
  opt.steps = 250;
  opt.keep_log = false;
  const SimSetup setup;
  const RewardConfig c;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Evaluate(policy, setup, {1.0, 0.0}, 3, c, opt));
  }
  state.SetItemsProcessed(state.iterations() * opt.steps);
}
BENCHMARK(BM_Episode)->Unit(benchmark::kMillisecond);

void BM_ClassifyGait(benchmark::State& state) {
  ContactSchedule cs;
  cs.dt = 0.02;
  const int period = 40;
  const int offsets[kNumFeet] = {0, 20, 20, 0};
  for (int f = 0; f < kNumFeet; ++f) {
    for (int k = 0; k < 400; ++k) {
      cs.stance[f].push_back(((k - offsets[f]) % period + period) % period < 20);
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(ClassifyGait(cs));
}
BENCHMARK(BM_ClassifyGait);

}  // namespace
}  // namespace gaitlab

BENCHMARK_MAIN();
