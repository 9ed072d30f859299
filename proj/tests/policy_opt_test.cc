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

#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "gaitlab/curriculum.h"
#include "gaitlab/errors.h"
#include "gaitlab/evolution_strategy.h"
#include "gaitlab/observation.h"
#include "gaitlab/policy.h"
#include "gaitlab/trainer.h"

namespace gaitlab {
namespace {

StepSample KnownSample() {
  StepSample s;
  s.trunk_pitch = 0.1;
  s.joint_positions = {1, 2, 3, 4, 5, 6, 7, 8};
  s.joint_velocities = {10, 20, 30, 40, 50, 60, 70, 80};
  s.action = {0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
  return s;
}

TEST(ObservationTest, FrameLayout) {
  ObservationScaling sc;
  sc.nominal.fill(0.5);
  sc.velocity_scale = 0.1;
  sc.action_scale = 0.25;
  const Frame f = MakeFrame(KnownSample(), Command{0.7, -0.2}, sc);
  EXPECT_DOUBLE_EQ(f[0], std::sin(0.1));
  EXPECT_DOUBLE_EQ(f[1], std::cos(0.1));
  EXPECT_EQ(f[2], 0.7);
  EXPECT_EQ(f[3], -0.2);
  for (int j = 0; j < 8; ++j) {
    EXPECT_DOUBLE_EQ(f[4 + j], (j + 1) - 0.5);
    EXPECT_DOUBLE_EQ(f[12 + j], 10.0 * (j + 1) * 0.1);
    EXPECT_EQ(f[20 + j], 0.0);
  }
}

TEST(ObservationTest, HistoryIsZeroPaddedNewestFirst) {
  ObservationScaling sc;
  ObservationHistory h(3);
  const StepSample s = KnownSample();
  EXPECT_EQ(BuildObservation(s, h, {}, sc).size(), ObservationSize(3));
  Frame a{};
  a[0] = 1.0;
  Frame b{};
  b[0] = 2.0;
  h.Push(a);
  h.Push(b);
  const std::vector<double> obs = BuildObservation(s, h, {}, sc);
  ASSERT_EQ(obs.size(), 4 * kFrameSize);
  EXPECT_EQ(obs[kFrameSize], 2.0);
  EXPECT_EQ(obs[2 * kFrameSize], 1.0);
  for (std::size_t i = 3 * kFrameSize; i < obs.size(); ++i) EXPECT_EQ(obs[i], 0.0);
  EXPECT_THROW(h.at(3), InputShapeError);
}

TEST(ObservationTest, HistoryDropsOldest) {
  ObservationHistory h(2);
  for (int k = 1; k <= 5; ++k) {
    Frame f{};
    f[0] = k;
    h.Push(f);
  }
  EXPECT_EQ(h.at(0)[0], 5.0);
  EXPECT_EQ(h.at(1)[0], 4.0);
}

TEST(PolicyTest, ForwardMatchesHandComputation) {
  Policy p({2, 2, 1});
  ASSERT_EQ(p.num_params(), 2u * 2 + 2 + 2 * 1 + 1);
  // Row-major weights then biases, per layer.
  const std::vector<double> w = {0.1, -0.2, 0.3, 0.4, 0.05, -0.05,
                                 0.7, -0.6, 0.2};
  p.set_params(w);
  const std::vector<double> x = {1.5, -0.5};
  const double h0 = std::tanh(0.1 * 1.5 - 0.2 * -0.5 + 0.05);
  const double h1 = std::tanh(0.3 * 1.5 + 0.4 * -0.5 - 0.05);
  const double y = std::tanh(0.7 * h0 - 0.6 * h1 + 0.2);
  double out = 0.0;
  p.Forward(x, std::span<double>(&out, 1));
  EXPECT_NEAR(out, y, 1e-15);
}

TEST(PolicyTest, ShapeErrors) {
  Policy p({3, 4, 2});
  std::vector<double> out(2);
  const std::vector<double> bad(2);
  EXPECT_THROW(p.Forward(bad, out), InputShapeError);
  EXPECT_THROW(p.set_params(std::vector<double>(3)), InputShapeError);
}

TEST(PolicyTest, ZeroOutputMapsToNominal) {
  JointVector nominal;
  for (int j = 0; j < kNumJoints; ++j) nominal[j] = 0.1 * j;
  const std::vector<double> zero(kNumJoints, 0.0);
  EXPECT_EQ(ActionToTargets(zero, nominal, 0.6), nominal);
  const std::vector<double> one(kNumJoints, 1.0);
  EXPECT_NEAR(ActionToTargets(one, nominal, 0.6)[3], 0.3 + 0.6, 1e-15);
}

TEST(PolicyTest, MakePolicyInputSizeTracksClock) {
  TrainConfig tc;
  tc.history = 2;
  tc.hidden = {16};
  EXPECT_EQ(MakePolicy(tc).net.input_size(), 3 * 28);
  tc.clock_frequency = 2.0;
  EXPECT_EQ(MakePolicy(tc).net.input_size(), 3 * 28 + 2);
  EXPECT_EQ(MakePolicy(tc).net.output_size(), 8);
}

TEST(CurriculumTest, ExpandsOnlyAboveThreshold) {
  Curriculum c;
  c.lin = 1.0;
  c.lin_step = 0.25;
  c.lin_max = 1.4;
  Curriculum n = UpdateCurriculum(c, 0.5, 1.0);
  EXPECT_EQ(n.lin, 1.0);
  n = UpdateCurriculum(n, 1.0, 1.0);
  EXPECT_EQ(n.lin, 1.25);
  n = UpdateCurriculum(n, 2.0, 1.0);
  EXPECT_EQ(n.lin, 1.4);
}

TEST(CurriculumTest, SamplesStayInRange) {
  Curriculum c;
  c.lin = 1.5;
  c.ang = 0.5;
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const Command cmd = SampleCommands(c, rng);
    EXPECT_LE(std::abs(cmd.vx), 1.5);
    EXPECT_LE(std::abs(cmd.wz), 0.5);
  }
  c.symmetric = false;
  for (int i = 0; i < 500; ++i) EXPECT_GE(SampleCommands(c, rng).vx, 0.0);
}

TEST(CurriculumTest, BatchIsStratified) {
  Curriculum c;
  c.lin = 2.0;
  c.symmetric = false;
  Rng rng(9);
  const std::vector<Command> batch = SampleCommandBatch(c, 4, rng);
  ASSERT_EQ(batch.size(), 4u);
  for (int k = 0; k < 4; ++k) {
    EXPECT_GE(batch[k].vx, 0.5 * k);
    EXPECT_LE(batch[k].vx, 0.5 * (k + 1));
  }
}

TEST(CurriculumTest, ReturnProxy) {
  RewardConfig rc;
  EXPECT_NEAR(MaxReturnProxy(rc, 1000, 0.02), 2.5 * 20.0, 1e-12);
}

TEST(EvolutionStrategyTest, CenteredRanksAreCenteredWithTies) {
  const std::vector<double> v = {3.0, 1.0, 2.0, 2.0};
  const std::vector<double> r = CenteredRanks(v);
  EXPECT_DOUBLE_EQ(r[0], 0.5);
  EXPECT_DOUBLE_EQ(r[1], -0.5);
  EXPECT_DOUBLE_EQ(r[2], 0.0);
  EXPECT_DOUBLE_EQ(r[3], 0.0);
  EXPECT_NEAR(std::accumulate(r.begin(), r.end(), 0.0), 0.0, 1e-15);
}

TEST(EvolutionStrategyTest, QuadraticSurrogateConverges) {
  const int n = 10;
  std::vector<double> center(n);
  for (int i = 0; i < n; ++i) center[i] = 0.3 * i - 1.0;
  auto f = [&](std::span<const double> x, int) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s -= (x[i] - center[i]) * (x[i] - center[i]);
    return s;
  };
  EsConfig cfg;
  cfg.pairs = 16;
  cfg.sigma = 0.01;
  cfg.learning_rate = 0.02;
  cfg.rule = StepRule::kAdam;
  cfg.seed = 7;
  const std::vector<double> x = Maximize(f, std::vector<double>(n, 0.0), cfg, 200);
  EXPECT_LE(-f(x, 0), 1e-3);
}

TEST(EvolutionStrategyTest, ZeroSigmaLeavesParamsUnchanged) {
  EsConfig cfg;
  cfg.pairs = 4;
  cfg.sigma = 0.0;
  const std::vector<double> init = {1.0, -2.0, 3.0};
  EvolutionStrategy es(cfg, init);
  for (int it = 0; it < 3; ++it) {
    const auto candidates = es.Ask(it);
    ASSERT_EQ(candidates.size(), 8u);
    std::vector<double> fit(candidates.size());
    for (std::size_t k = 0; k < fit.size(); ++k) fit[k] = static_cast<double>(k);
    es.Tell(fit);
  }
  EXPECT_EQ(es.params(), init);
}

TEST(EvolutionStrategyTest, CandidatesAreMirrored) {
  EsConfig cfg;
  cfg.pairs = 3;
  cfg.sigma = 0.1;
  const std::vector<double> init = {0.5, 0.5};
  EvolutionStrategy es(cfg, init);
  const auto c = es.Ask(0);
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 2; ++i) {
      EXPECT_NEAR(c[2 * k][i] + c[2 * k + 1][i], 2 * init[i], 1e-15);
    }
  }
  EXPECT_THROW(es.Tell(std::vector<double>(5)), TrainingError);
}

TEST(EvolutionStrategyTest, ParallelForVisitsEveryIndexOnce) {
  std::vector<int> hits(97, 0);
  ParallelFor(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (int h : hits) EXPECT_EQ(h, 1);
}

SimSetup NominalSetup() {
  SimSetup s;
  return s;
}

TEST(TrainerTest, RescoringIsLinearInEnergyWeight) {
  TrainConfig tc;
  tc.history = 1;
  tc.hidden = {8};
  tc.init_output_gain = 1.0;
  LocomotionPolicy policy = MakePolicy(tc);
  RolloutOptions opt;
  opt.steps = 150;
  RewardConfig rc;
  const EpisodeResult ep = Evaluate(policy, NominalSetup(), {1.0, 0.0}, 3, rc, opt);
  ASSERT_FALSE(ep.log.samples.empty());
  RewardConfig r0 = rc;
  r0.alpha_en = 0.0;
  RewardConfig r1 = rc;
  r1.alpha_en = 1.0;
  double expected = 0.0;
  for (const StepSample& s : ep.log.samples) {
    expected += EnergyReward(s, rc) * std::exp(-AuxReward(s, rc)) *
                ep.log.header.dt_control;
  }
  EXPECT_NEAR(RescoreReturn(ep.log, r1) - RescoreReturn(ep.log, r0), expected,
              1e-9);
  EXPECT_NEAR(RescoreReturn(ep.log, r1), ep.episode_return, 1e-9);
}

TEST(TrainerTest, StandingPolicyEarnsLowVelocityReward) {
  TrainConfig tc;
  tc.history = 0;
  tc.hidden = {8};
  LocomotionPolicy policy = MakePolicy(tc);
  policy.net.set_params(std::vector<double>(policy.net.num_params(), 0.0));
  RolloutOptions opt;
  opt.steps = 200;
  opt.randomize_dynamics = false;
  opt.observation_noise = false;
  RewardConfig rc;
  const EpisodeResult ep = Evaluate(policy, NominalSetup(), {1.0, 0.0}, 1, rc, opt);
  ASSERT_EQ(ep.steps, 200);
  double r_lin = 0.0;
  for (const StepSample& s : ep.log.samples) r_lin += MotionReward(s, rc).r_lin;
  r_lin /= ep.log.samples.size();
  // Zero achieved speed against a 1 m/s command.
  EXPECT_NEAR(r_lin, std::exp(-4.0), 0.1 * std::exp(-4.0));
  const double bound = (std::exp(-4.0) * 1.1 + rc.alpha_ang + rc.alpha_en) *
                       opt.steps * ep.log.header.dt_control;
  EXPECT_LE(ep.episode_return, bound);
}

TrainConfig TinyTraining() {
  TrainConfig tc;
  tc.population = 2;
  tc.iterations = 3;
  tc.episodes_per_eval = 2;
  tc.episode_steps = 30;
  tc.history = 1;
  tc.hidden = {8};
  tc.eval_interval = 1;
  tc.validation_commands = {1.0};
  tc.clock_frequency = 2.0;
  tc.seed = 42;
  return tc;
}

TEST(TrainerTest, TrainingIsDeterministicAcrossThreadCounts) {
  TrainConfig a = TinyTraining();
  a.jobs = 1;
  TrainConfig b = TinyTraining();
  b.jobs = 3;
  const TrainResult ra = Train(a, NominalSetup(), RewardConfig{}, Curriculum{});
  const TrainResult rb = Train(b, NominalSetup(), RewardConfig{}, Curriculum{});
  ASSERT_EQ(ra.history.size(), 3u);
  ASSERT_EQ(rb.history.size(), 3u);
  for (std::size_t i = 0; i < ra.history.size(); ++i) {
    EXPECT_EQ(ra.history[i].mean_return, rb.history[i].mean_return);
    EXPECT_EQ(ra.history[i].best_return, rb.history[i].best_return);
  }
  EXPECT_EQ(ra.final_params, rb.final_params);
  const auto pa = ra.policy.net.params();
  const auto pb = rb.policy.net.params();
  EXPECT_TRUE(std::equal(pa.begin(), pa.end(), pb.begin(), pb.end()));
}

TEST(TrainerTest, SeedChangesTraining) {
  TrainConfig a = TinyTraining();
  TrainConfig b = TinyTraining();
  b.seed = 43;
  const TrainResult ra = Train(a, NominalSetup(), RewardConfig{}, Curriculum{});
  const TrainResult rb = Train(b, NominalSetup(), RewardConfig{}, Curriculum{});
  EXPECT_NE(ra.final_params, rb.final_params);
}

TEST(TrainerTest, ConfigValidation) {
  TrainConfig tc;
  tc.population = 0;
  EXPECT_THROW(tc.Validate(), ConfigError);
  tc = TrainConfig{};
  tc.clock_gain = -1.0;
  EXPECT_THROW(tc.Validate(), ConfigError);
  Curriculum c;
  c.smoothing = 1.0;
  EXPECT_THROW(c.Validate(), ConfigError);
  EXPECT_EQ(ParseStepRule("sgd"), StepRule::kSgd);
  EXPECT_THROW(ParseStepRule("rmsprop"), ConfigError);
}

}  // namespace
}  // namespace gaitlab
