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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>

#include "gaitlab/errors.h"

namespace gaitlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMinNetDistance = 1e-6;

bool InWindow(double t, TimeWindow w) { return t >= w.begin && t < w.end; }

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Circular mean of phases in [0, 1).
double CircularMean(const std::vector<double>& phases) {
  double s = 0.0, c = 0.0;
  for (double p : phases) {
    s += std::sin(kTwoPi * p);
    c += std::cos(kTwoPi * p);
  }
  double m = std::atan2(s, c) / kTwoPi;
  if (m < 0) m += 1.0;
  if (m >= 1.0) m -= 1.0;
  return m;
}

double CircularMean2(double a, double b) { return CircularMean({a, b}); }

}  // namespace

void ContactSchedule::Validate() const {
  const std::size_t t = stance[0].size();
  if (t == 0) throw InputShapeError("contact schedule has no steps");
  for (const auto& row : stance) {
    if (row.size() != t) {
      throw InputShapeError("contact schedule rows differ in length");
    }
  }
  if (!(dt > 0) || !std::isfinite(dt)) {
    throw InputShapeError("contact schedule dt must be positive");
  }
}

ContactSchedule ScheduleFromLog(const RolloutLog& log, TimeWindow window) {
  ContactSchedule cs;
  cs.dt = log.header.dt_control;
  for (const StepSample& s : log.samples) {
    if (!InWindow(s.t, window)) continue;
    for (int f = 0; f < kNumFeet; ++f) cs.stance[f].push_back(s.foot_contact[f]);
  }
  return cs;
}

std::string_view GaitName(Gait g) {
  switch (g) {
    case Gait::kWalk4Beat: return "Walk4Beat";
    case Gait::kWalk2Beat: return "Walk2Beat";
    case Gait::kTrot: return "Trot";
    case Gait::kFlyTrot: return "FlyTrot";
    case Gait::kBounce: return "Bounce";
    case Gait::kUnknown: return "Unknown";
  }
  return "Unknown";
}

StrideSegmentation ExtractStrides(const ContactSchedule& cs) {
  cs.Validate();
  const std::size_t steps = cs.steps();

  StrideSegmentation seg;
  std::array<std::vector<std::size_t>, kNumFeet> td_index;
  for (int f = 0; f < kNumFeet; ++f) {
    for (std::size_t k = 1; k < steps; ++k) {
      if (cs.stance[f][k] && !cs.stance[f][k - 1]) {
        td_index[f].push_back(k);
        seg.touchdowns[f].push_back(static_cast<double>(k) * cs.dt);
      }
    }
  }

  const auto& fl = td_index[kFrontLeft];
  if (fl.size() < 2) {
    throw InsufficientDataError("need at least 2 front-left touchdowns, got " +
                                std::to_string(fl.size()));
  }
  std::vector<double> intervals;
  for (std::size_t i = 1; i < fl.size(); ++i) {
    intervals.push_back(static_cast<double>(fl[i] - fl[i - 1]) * cs.dt);
  }
  seg.stride_period = Median(intervals);
  seg.window_begin = fl.front();
  seg.window_end = fl.back();

  // Phase of each touchdown relative to the FL stride that contains it.
  seg.phase_offset[kFrontLeft] = 0.0;
  for (int f = 1; f < kNumFeet; ++f) {
    std::vector<double> phases;
    std::size_t stride = 0;
    for (std::size_t k : td_index[f]) {
      if (k < fl.front() || k >= fl.back()) continue;
      while (fl[stride + 1] <= k) ++stride;
      const double span = static_cast<double>(fl[stride + 1] - fl[stride]);
      phases.push_back(static_cast<double>(k - fl[stride]) / span);
    }
    if (!phases.empty()) seg.phase_offset[f] = CircularMean(phases);
  }
  return seg;
}

double PhaseDistance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 1.0);
  return std::min(d, 1.0 - d);
}

double MaxPhaseSpread(const GaitLabel& label) {
  double spread = 0.0;
  for (int i = 0; i < kNumFeet; ++i) {
    for (int j = i + 1; j < kNumFeet; ++j) {
      if (label.phase_offset[i] && label.phase_offset[j]) {
        spread = std::max(spread, PhaseDistance(*label.phase_offset[i],
                                                *label.phase_offset[j]));
      }
    }
  }
  return spread;
}

GaitLabel ClassifyGait(const ContactSchedule& cs, const GaitThresholds& th) {
  const StrideSegmentation seg = ExtractStrides(cs);

  GaitLabel label;
  label.phase_offset = seg.phase_offset;
  label.stride_period = seg.stride_period;

  const std::size_t n = seg.window_end - seg.window_begin;
  std::size_t flight = 0, quad = 0;
  std::array<std::size_t, kNumFeet> stance_count{};
  for (std::size_t k = seg.window_begin; k < seg.window_end; ++k) {
    int down = 0;
    for (int f = 0; f < kNumFeet; ++f) {
      if (cs.stance[f][k]) {
        ++stance_count[f];
        ++down;
      }
    }
    if (down == 0) ++flight;
    if (down == kNumFeet) ++quad;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int f = 0; f < kNumFeet; ++f) {
    label.duty_factor[f] = static_cast<double>(stance_count[f]) * inv_n;
  }
  label.flight_fraction = static_cast<double>(flight) * inv_n;
  label.quad_support_fraction = static_cast<double>(quad) * inv_n;

  const auto& o = label.phase_offset;
  if (!(o[0] && o[1] && o[2] && o[3])) return label;

  if (MaxPhaseSpread(label) < th.sync) {
    label.gait = Gait::kBounce;
    return label;
  }

  const bool diagonal_a = PhaseDistance(*o[kFrontLeft], *o[kRearRight]) < th.pair;
  const bool diagonal_b = PhaseDistance(*o[kFrontRight], *o[kRearLeft]) < th.pair;
  if (diagonal_a && diagonal_b) {
    const double pair_a = CircularMean2(*o[kFrontLeft], *o[kRearRight]);
    const double pair_b = CircularMean2(*o[kFrontRight], *o[kRearLeft]);
    if (std::abs(PhaseDistance(pair_a, pair_b) - 0.5) < th.pair) {
      if (label.flight_fraction > th.flight) {
        label.gait = Gait::kFlyTrot;
      } else if (label.quad_support_fraction > th.quad) {
        label.gait = Gait::kWalk2Beat;
      } else {
        label.gait = Gait::kTrot;
      }
      return label;
    }
  }

  double min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kNumFeet; ++i) {
    for (int j = i + 1; j < kNumFeet; ++j) {
      min_gap = std::min(min_gap, PhaseDistance(*o[i], *o[j]));
    }
  }
  double mean_duty = 0.0;
  for (double d : label.duty_factor) mean_duty += d / kNumFeet;
  if (min_gap > th.four_beat && mean_duty > th.walk_duty) {
    label.gait = Gait::kWalk4Beat;
  }
  return label;
}

double RectifiedEnergy(const RolloutLog& log, TimeWindow window) {
  double energy = 0.0;
  for (const StepSample& s : log.samples) {
    if (InWindow(s.t, window)) energy += RectifiedPower(s) * log.header.dt_control;
  }
  return energy;
}

double NetDistance(const RolloutLog& log, TimeWindow window) {
  const double dt = log.header.dt_control;
  double heading = 0.0, dx = 0.0, dy = 0.0;
  for (const StepSample& s : log.samples) {
    if (!InWindow(s.t, window)) continue;
    // Exact displacement of a constant body twist held for dt.
    double ic, is;  // integrals of cos and sin of the heading over the step
    const double turn = s.wz * dt;
    if (std::abs(turn) < 1e-9) {
      ic = std::cos(heading) * dt;
      is = std::sin(heading) * dt;
    } else {
      ic = (std::sin(heading + turn) - std::sin(heading)) / s.wz;
      is = (std::cos(heading) - std::cos(heading + turn)) / s.wz;
    }
    dx += s.vx * ic - s.vy * is;
    dy += s.vx * is + s.vy * ic;
    heading += turn;
  }
  return std::hypot(dx, dy);
}

double CostOfTransport(const RolloutLog& log, TimeWindow window) {
  const double distance = NetDistance(log, window);
  if (!(distance >= kMinNetDistance)) {
    throw DegenerateMotionError("net distance " + std::to_string(distance) +
                                " m is too small for cost of transport");
  }
  return RectifiedEnergy(log, window) / distance;
}

double GeneralizedDistance(const RolloutLog& log, const RewardConfig& c) {
  const double norm = c.sigma_en_x > 0 ? c.sigma_en_x : c.sigma_en_z;
  double sum = 0.0;
  for (const StepSample& s : log.samples) {
    sum += (c.sigma_en_x * std::abs(s.vx) + c.sigma_en_z * std::abs(s.wz)) *
           log.header.dt_control;
  }
  return sum / norm;
}

CircleTrackingResult CircleTrackingError(std::span<const Point2> positions,
                                         Point2 center, double radius) {
  if (!(radius > 0)) throw InputShapeError("circle radius must be > 0");
  if (positions.empty()) throw InputShapeError("no positions given");
  CircleTrackingResult r;
  r.errors.reserve(positions.size());
  for (const Point2& p : positions) {
    const double d = std::hypot(p.x - center.x, p.y - center.y);
    r.errors.push_back(std::abs(d - radius));
    r.accumulated += r.errors.back();
  }
  return r;
}

std::vector<SweepRow> VelocitySweepReport(std::span<const RolloutLog> logs,
                                          const GaitThresholds& thresholds,
                                          double transient_fraction) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<SweepRow> rows;
  rows.reserve(logs.size());
  for (const RolloutLog& log : logs) {
    SweepRow row;
    row.command_vx = log.header.cmd_vx;
    row.command_wz = log.header.cmd_wz;
    row.cot.command_speed = log.header.cmd_vx;
    const TimeWindow window = SteadyStateWindow(log, transient_fraction);

    double speed_sum = 0.0;
    std::size_t count = 0;
    for (const StepSample& s : log.samples) {
      if (InWindow(s.t, window)) {
        speed_sum += std::abs(s.vx);
        ++count;
      }
    }
    if (count == 0) {
      row.cot = {log.header.cmd_vx, nan, nan, nan};
      row.error = "no samples in steady-state window";
      rows.push_back(std::move(row));
      continue;
    }
    row.cot.achieved_speed = speed_sum / static_cast<double>(count);
    row.cot.tracking_error =
        std::abs(row.cot.achieved_speed - std::abs(log.header.cmd_vx));

    auto note = [&row](const std::string& what) {
      if (!row.error.empty()) row.error += "; ";
      row.error += what;
    };
    try {
      row.cot.cot = CostOfTransport(log, window);
    } catch (const Error& e) {
      row.cot.cot = nan;
      note(e.what());
    }
    try {
      row.gait = ClassifyGait(ScheduleFromLog(log, window), thresholds);
    } catch (const Error& e) {
      row.gait = GaitLabel{};
      row.gait.duty_factor.fill(nan);
      row.gait.flight_fraction = nan;
      row.gait.quad_support_fraction = nan;
      row.gait.stride_period = nan;
      note(e.what());
    }
    if (log.header.diverged) note("rollout diverged");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace gaitlab
