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

// Post-hoc analysis of rollout logs: cost of transport, generalized distance,
// stride segmentation, gait classification and circle-tracking error.

#ifndef GAITLAB_GAIT_METRICS_H_
#define GAITLAB_GAIT_METRICS_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gaitlab/reward.h"
#include "gaitlab/rollout_log.h"

namespace gaitlab {

// Stance flags per foot, rows in Foot order (FL, FR, RL, RR).
struct ContactSchedule {
  std::array<std::vector<bool>, kNumFeet> stance;
  double dt = 0.02;

  std::size_t steps() const { return stance[0].size(); }
  // Throws InputShapeError unless T >= 1, rows are equal length and dt > 0.
  void Validate() const;
};

ContactSchedule ScheduleFromLog(const RolloutLog& log, TimeWindow window);

enum class Gait { kWalk4Beat, kWalk2Beat, kTrot, kFlyTrot, kBounce, kUnknown };

std::string_view GaitName(Gait g);

struct StrideSegmentation {
  std::array<std::vector<double>, kNumFeet> touchdowns;  // s
  double stride_period = 0.0;                            // s
  // Fraction of a stride in [0, 1), FL is the reference (always 0). Empty
  // for feet that never touch down.
  std::array<std::optional<double>, kNumFeet> phase_offset;
  // [begin, end) sample indices spanning whole FL strides.
  std::size_t window_begin = 0;
  std::size_t window_end = 0;
};

// Touchdown = swing->stance transition. The stride period is the median FL
// touchdown interval. Throws InsufficientDataError on fewer than two FL
// touchdowns.
StrideSegmentation ExtractStrides(const ContactSchedule& cs);

struct GaitThresholds {
  double sync = 0.1;
  double pair = 0.1;
  double flight = 0.02;
  double quad = 0.05;
  double four_beat = 0.1;
  double walk_duty = 0.6;
};

struct GaitLabel {
  Gait gait = Gait::kUnknown;
  std::array<double, kNumFeet> duty_factor{};
  std::array<std::optional<double>, kNumFeet> phase_offset;
  double flight_fraction = 0.0;
  double quad_support_fraction = 0.0;
  double stride_period = 0.0;
};

GaitLabel ClassifyGait(const ContactSchedule& cs,
                       const GaitThresholds& thresholds = {});

// Distance between two stride phases on the unit circle, in [0, 0.5].
double PhaseDistance(double a, double b);

// Largest pairwise phase distance among the feet that have an offset.
double MaxPhaseSpread(const GaitLabel& label);

// Rectified energy over the window divided by the net planar displacement.
// The displacement integrates (vx, vy) along the heading obtained from wz,
// exactly for piecewise-constant twists. Throws DegenerateMotionError when
// the displacement is below 1e-6 m.
double CostOfTransport(const RolloutLog& log, TimeWindow window);

double RectifiedEnergy(const RolloutLog& log, TimeWindow window);

// Net planar displacement (m) over the window.
double NetDistance(const RolloutLog& log, TimeWindow window);

// Sum of (sigma_en_x |vx| + sigma_en_z |wz|) dt normalized by sigma_en_x, so
// it equals the path length when wz == 0. Normalized by sigma_en_z when
// sigma_en_x is zero.
double GeneralizedDistance(const RolloutLog& log, const RewardConfig& c);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct CircleTrackingResult {
  std::vector<double> errors;
  double accumulated = 0.0;
};

// e(t) = | |p(t) - center| - radius |, accumulated by plain summation.
CircleTrackingResult CircleTrackingError(std::span<const Point2> positions,
                                         Point2 center, double radius);

struct CotPoint {
  double command_speed = 0.0;
  double achieved_speed = 0.0;
  double cot = 0.0;
  double tracking_error = 0.0;
};

struct SweepRow {
  double command_vx = 0.0;
  double command_wz = 0.0;
  CotPoint cot;
  GaitLabel gait;
  // Empty when every metric succeeded.
  std::string error;
};

// One row per log, computed over the steady-state window (first 20% of the
// episode dropped). Per-log failures are reported in SweepRow::error with
// the affected metrics set to NaN / Unknown.
std::vector<SweepRow> VelocitySweepReport(std::span<const RolloutLog> logs,
                                          const GaitThresholds& thresholds = {},
                                          double transient_fraction = 0.2);

}  // namespace gaitlab

#endif  // GAITLAB_GAIT_METRICS_H_
