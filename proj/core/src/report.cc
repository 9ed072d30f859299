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

#include "gaitlab/report.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "gaitlab/errors.h"
#include "gaitlab/log_io.h"

namespace gaitlab {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string F(double v) { return FormatDouble(v); }
std::string F(const std::optional<double>& v) { return F(v.value_or(kNaN)); }

}  // namespace

void WriteSweepCsv(std::span<const SweepRow> rows, std::ostream& out) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    const GaitLabel& g = r.gait;
    out << F(r.command_vx) << ',' << F(r.command_wz) << ','
        << F(r.cot.achieved_speed) << ',' << F(r.cot.cot) << ','
        << F(r.cot.tracking_error) << ',' << GaitName(g.gait);
    for (int f = 0; f < kNumFeet; ++f) out << ',' << F(g.duty_factor[f]);
    for (int f = kFrontRight; f < kNumFeet; ++f) {
      out << ',' << F(g.phase_offset[f]);
    }
    out << ',' << F(g.flight_fraction) << ',' << F(g.quad_support_fraction)
        << '\n';
  }
}

void WriteGaitDiagramCsv(const RolloutLog& log, std::ostream& out) {
  out << kGaitDiagramCsvHeader << '\n';
  for (const StepSample& s : log.samples) {
    out << F(s.t);
    for (bool c : s.foot_contact) out << ',' << (c ? 1 : 0);
    out << '\n';
  }
}

std::string GaitDiagramSvg(const RolloutLog& log, TimeWindow window) {
  constexpr double kWidth = 800.0;
  constexpr double kLabel = 40.0;
  constexpr double kRow = 24.0;
  constexpr double kGap = 8.0;
  static constexpr const char* kNames[kNumFeet] = {"FL", "FR", "RL", "RR"};
  const double span = window.end - window.begin;
  const double dt = log.header.dt_control;
  const double scale = span > 0 ? (kWidth - kLabel) / span : 0.0;
  const double height = kNumFeet * (kRow + kGap) + kGap;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int f = 0; f < kNumFeet; ++f) {
    const double y = kGap + f * (kRow + kGap);
    svg << "<text x=\"4\" y=\"" << y + 0.7 * kRow
        << "\" font-family=\"sans-serif\" font-size=\"14\">" << kNames[f]
        << "</text>\n";
    // Merge consecutive stance samples into one rectangle.
    double start = kNaN;
    auto flush = [&](double end) {
      if (std::isnan(start)) return;
      svg << "<rect x=\"" << kLabel + (start - window.begin) * scale
          << "\" y=\"" << y << "\" width=\"" << (end - start) * scale
          << "\" height=\"" << kRow << "\" fill=\"black\"/>\n";
      start = kNaN;
    };
    for (const StepSample& s : log.samples) {
      if (s.t < window.begin || s.t >= window.end) continue;
      const double begin = std::max(s.t - dt, window.begin);
      if (s.foot_contact[f]) {
        if (std::isnan(start)) start = begin;
      } else {
        flush(begin);
      }
    }
    if (!log.samples.empty()) {
      flush(std::min(log.samples.back().t, window.end));
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

void WriteTrainingCsv(std::span<const TrainingRecord> history,
                      std::ostream& out) {
  out << kTrainingCsvHeader << '\n';
  for (const TrainingRecord& r : history) {
    out << r.iteration << ',' << F(r.mean_return) << ',' << F(r.best_return)
        << ',' << F(r.curriculum_lin) << ',' << F(r.wall_time) << '\n';
  }
}

void WriteRewardCsv(const RolloutLog& log, const RewardConfig& c,
                    std::ostream& out) {
  out << kRewardCsvHeader << '\n';
  for (const StepSample& s : log.samples) {
    const RewardBreakdown b = TotalReward(s, c);
    out << F(s.t) << ',' << F(b.r_lin) << ',' << F(b.r_ang) << ','
        << F(b.r_motion) << ',' << F(b.r_en) << ',' << F(b.r_aux_raw) << ','
        << F(b.r_total) << ',' << F(RectifiedPower(s)) << '\n';
  }
}

void WriteCircleCsv(std::span<const double> times,
                    std::span<const Point2> positions,
                    const CircleTrackingResult& result, std::ostream& out) {
  if (times.size() != result.errors.size() ||
      positions.size() != result.errors.size()) {
    throw InputShapeError("circle CSV inputs differ in length");
  }
  out << kCircleCsvHeader << '\n';
  double accumulated = 0.0;
  for (std::size_t k = 0; k < result.errors.size(); ++k) {
    accumulated += result.errors[k];
    out << k << ',' << F(times[k]) << ',' << F(positions[k].x) << ','
        << F(positions[k].y) << ',' << F(result.errors[k]) << ','
        << F(accumulated) << '\n';
  }
}

}  // namespace gaitlab
