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

#include "gaitlab/gait_metrics.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "gaitlab/errors.h"

namespace gaitlab {
namespace {

using testing::ConstantLog;
using testing::GaitSpec;
using testing::MakeSchedule;

constexpr double kDt = 0.02;

TEST(ClassifyGaitTest, Trot) {
  const GaitLabel g =
      ClassifyGait(MakeSchedule({{0, 0.5, 0.5, 0}, {0.5, 0.5, 0.5, 0.5}}, 40, 6, kDt));
  EXPECT_EQ(g.gait, Gait::kTrot);
  EXPECT_DOUBLE_EQ(g.duty_factor[0], 0.5);
  EXPECT_DOUBLE_EQ(*g.phase_offset[kFrontRight], 0.5);
  EXPECT_NEAR(*g.phase_offset[kRearRight], 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(g.flight_fraction, 0.0);
  EXPECT_DOUBLE_EQ(g.quad_support_fraction, 0.0);
  EXPECT_NEAR(g.stride_period, 0.8, 1e-12);
}

TEST(ClassifyGaitTest, FlyTrotHasFlight) {
  const GaitLabel g =
      ClassifyGait(MakeSchedule({{0, 0.5, 0.5, 0}, {0.4, 0.4, 0.4, 0.4}}, 40, 6, kDt));
  EXPECT_EQ(g.gait, Gait::kFlyTrot);
  // Two flight gaps of 0.1 stride each.
  EXPECT_NEAR(g.flight_fraction, 0.2, 1e-12);
}

TEST(ClassifyGaitTest, TwoBeatWalkHasQuadSupport) {
  const GaitLabel g =
      ClassifyGait(MakeSchedule({{0, 0.5, 0.5, 0}, {0.6, 0.6, 0.6, 0.6}}, 40, 6, kDt));
  EXPECT_EQ(g.gait, Gait::kWalk2Beat);
  EXPECT_NEAR(g.quad_support_fraction, 0.2, 1e-12);
}

TEST(ClassifyGaitTest, FourBeatWalk) {
  const GaitLabel g = ClassifyGait(
      MakeSchedule({{0, 0.5, 0.25, 0.75}, {0.75, 0.75, 0.75, 0.75}}, 40, 6, kDt));
  EXPECT_EQ(g.gait, Gait::kWalk4Beat);
}

TEST(ClassifyGaitTest, Bounce) {
  const GaitLabel g =
      ClassifyGait(MakeSchedule({{0, 0.02, 0.05, 0.03}, {0.4, 0.4, 0.4, 0.4}}, 40, 6, kDt));
  EXPECT_EQ(g.gait, Gait::kBounce);
}

TEST(ClassifyGaitTest, PaceIsUnknown) {
  // Lateral pairs in phase: neither diagonal nor four-beat.
  const GaitLabel g =
      ClassifyGait(MakeSchedule({{0, 0.5, 0, 0.5}, {0.5, 0.5, 0.5, 0.5}}, 40, 6, kDt));
  EXPECT_EQ(g.gait, Gait::kUnknown);
}

TEST(ClassifyGaitTest, DiagonalSwapKeepsTrot) {
  // Swapping FL<->RR and FR<->RL leaves a trot a trot.
  const GaitSpec spec{{0, 0.5, 0.5, 0.03}, {0.5, 0.5, 0.5, 0.5}};
  ContactSchedule cs = MakeSchedule(spec, 40, 6, kDt);
  ContactSchedule swapped = cs;
  std::swap(swapped.stance[kFrontLeft], swapped.stance[kRearRight]);
  std::swap(swapped.stance[kFrontRight], swapped.stance[kRearLeft]);
  EXPECT_EQ(ClassifyGait(cs).gait, Gait::kTrot);
  EXPECT_EQ(ClassifyGait(swapped).gait, Gait::kTrot);
}

TEST(ClassifyGaitTest, FlatContactThrowsInsufficientData) {
  ContactSchedule cs;
  cs.dt = kDt;
  for (auto& row : cs.stance) row.assign(100, true);
  EXPECT_THROW(ClassifyGait(cs), InsufficientDataError);
}

TEST(ClassifyGaitTest, RaggedScheduleThrows) {
  ContactSchedule cs = MakeSchedule({{0, 0.5, 0.5, 0}, {0.5, 0.5, 0.5, 0.5}}, 40, 3, kDt);
  cs.stance[2].pop_back();
  EXPECT_THROW(ClassifyGait(cs), InputShapeError);
}

TEST(ExtractStridesTest, MedianPeriodAndTouchdowns) {
  const ContactSchedule cs =
      MakeSchedule({{0, 0.5, 0.5, 0}, {0.5, 0.5, 0.5, 0.5}}, 25, 4, 0.01);
  const StrideSegmentation seg = ExtractStrides(cs);
  ASSERT_EQ(seg.touchdowns[kFrontLeft].size(), 3u);
  EXPECT_NEAR(seg.touchdowns[kFrontLeft][0], 0.25, 1e-12);
  EXPECT_NEAR(seg.stride_period, 0.25, 1e-12);
  EXPECT_EQ(seg.window_begin, 25u);
  EXPECT_EQ(seg.window_end, 75u);
}

TEST(PhaseTest, DistanceWrapsAround) {
  EXPECT_NEAR(PhaseDistance(0.95, 0.05), 0.1, 1e-12);
  EXPECT_NEAR(PhaseDistance(0.0, 0.5), 0.5, 1e-12);
  EXPECT_NEAR(PhaseDistance(0.3, 0.3), 0.0, 1e-12);
}

TEST(CostOfTransportTest, ConstantPowerAndSpeed) {
  const RolloutLog log = ConstantLog(1.0, 100.0, 200, kDt);
  EXPECT_NEAR(CostOfTransport(log, FullWindow(log)), 100.0, 1e-9);
  EXPECT_NEAR(RectifiedEnergy(log, FullWindow(log)), 100.0 * 4.0, 1e-9);
  EXPECT_NEAR(NetDistance(log, FullWindow(log)), 4.0, 1e-12);
}

TEST(CostOfTransportTest, StandingThrows) {
  const RolloutLog log = ConstantLog(0.0, 10.0, 50, kDt);
  EXPECT_THROW(CostOfTransport(log, FullWindow(log)), DegenerateMotionError);
}

TEST(CostOfTransportTest, FullCircleHasNoNetDistance) {
  // 1 m/s with 2 pi / T yaw rate closes a circle over the log.
  RolloutLog log = ConstantLog(1.0, 10.0, 100, kDt);
  for (StepSample& s : log.samples) s.wz = 2.0 * std::numbers::pi / 2.0;
  EXPECT_LT(NetDistance(log, FullWindow(log)), 1e-9);
}

TEST(CostOfTransportTest, HalfCircleNetDistanceIsDiameter) {
  // Radius v / w = 2 m, half a turn in pi / w = 2 pi s.
  const double w = 0.5;
  const int steps = 314;  // dt chosen so steps * dt = pi / w exactly
  const double dt = std::numbers::pi / w / steps;
  RolloutLog log = ConstantLog(1.0, 10.0, steps, dt);
  for (StepSample& s : log.samples) s.wz = w;
  EXPECT_NEAR(NetDistance(log, FullWindow(log)), 4.0, 1e-9);
}

TEST(GeneralizedDistanceTest, EqualsPathLengthWithoutYaw) {
  const RolloutLog log = ConstantLog(1.5, 10.0, 100, kDt);
  EXPECT_NEAR(GeneralizedDistance(log, RewardConfig{}), 3.0, 1e-12);
}

TEST(GeneralizedDistanceTest, YawWeightedBySigmaRatio) {
  RolloutLog log = ConstantLog(0.0, 10.0, 50, kDt);
  for (StepSample& s : log.samples) s.wz = 1.0;
  // 500 * 1 * 1 s / 1000.
  EXPECT_NEAR(GeneralizedDistance(log, RewardConfig{}), 0.5, 1e-12);
}

TEST(CircleTrackingTest, OnCircleIsZero) {
  std::vector<Point2> p;
  for (int k = 0; k < 100; ++k) {
    const double a = 0.05 * k;
    p.push_back({2.0 * std::sin(a), 2.0 - 2.0 * std::cos(a)});
  }
  const CircleTrackingResult r = CircleTrackingError(p, {0.0, 2.0}, 2.0);
  EXPECT_NEAR(r.accumulated, 0.0, 1e-12);
}

TEST(CircleTrackingTest, ConstantOffsetAccumulates) {
  std::vector<Point2> p;
  for (int k = 0; k < 100; ++k) {
    const double a = 0.07 * k;
    p.push_back({2.2 * std::cos(a), 2.2 * std::sin(a)});
  }
  const CircleTrackingResult r = CircleTrackingError(p, {0.0, 0.0}, 2.0);
  EXPECT_NEAR(r.accumulated, 20.0, 1e-9);
  EXPECT_NEAR(r.errors[17], 0.2, 1e-12);
}

TEST(CircleTrackingTest, RejectsBadInput) {
  std::vector<Point2> p{{0, 0}};
  EXPECT_THROW(CircleTrackingError(p, {0, 0}, 0.0), InputShapeError);
  EXPECT_THROW(CircleTrackingError({}, {0, 0}, 1.0), InputShapeError);
}

TEST(VelocitySweepReportTest, ConstantMotionMatchesCot) {
  RolloutLog log = ConstantLog(0.8, 80.0, 250, kDt);
  const ContactSchedule cs =
      MakeSchedule({{0, 0.5, 0.5, 0}, {0.5, 0.5, 0.5, 0.5}}, 25, 10, kDt);
  for (std::size_t k = 0; k < log.samples.size(); ++k) {
    for (int f = 0; f < kNumFeet; ++f) log.samples[k].foot_contact[f] = cs.stance[f][k];
  }
  log.header.cmd_vx = 1.0;
  const std::vector<SweepRow> rows =
      VelocitySweepReport(std::span<const RolloutLog>(&log, 1));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].cot.cot, 100.0, 1e-9);
  EXPECT_NEAR(rows[0].cot.achieved_speed, 0.8, 1e-12);
  EXPECT_NEAR(rows[0].cot.tracking_error, 0.2, 1e-12);
  EXPECT_EQ(rows[0].gait.gait, Gait::kTrot);
  EXPECT_TRUE(rows[0].error.empty());
}

TEST(VelocitySweepReportTest, FailuresBecomeNaN) {
  const RolloutLog log = ConstantLog(0.0, 5.0, 100, kDt);
  const std::vector<SweepRow> rows =
      VelocitySweepReport(std::span<const RolloutLog>(&log, 1));
  EXPECT_TRUE(std::isnan(rows[0].cot.cot));
  EXPECT_EQ(rows[0].gait.gait, Gait::kUnknown);
  EXPECT_FALSE(rows[0].error.empty());
}

TEST(SteadyStateWindowTest, DropsLeadingFraction) {
  const RolloutLog log = ConstantLog(1.0, 1.0, 100, kDt);
  const TimeWindow w = SteadyStateWindow(log, 0.2);
  EXPECT_DOUBLE_EQ(w.begin, log.samples[20].t);
  EXPECT_GT(w.end, log.samples.back().t);
}

}  // namespace
}  // namespace gaitlab
