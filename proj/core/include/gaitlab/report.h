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

// CSV and SVG report writers. Column orders are part of the public contract;
// numbers use the shortest round-trip representation, missing values "nan",
// booleans 0/1.

#ifndef GAITLAB_REPORT_H_
#define GAITLAB_REPORT_H_

#include <iosfwd>
#include <span>
#include <string>

#include "gaitlab/gait_metrics.h"
#include "gaitlab/reward.h"
#include "gaitlab/rollout_log.h"
#include "gaitlab/trainer.h"

namespace gaitlab {

inline constexpr char kSweepCsvHeader[] =
    "command_vx,command_wz,achieved_vx,cot_j_per_m,tracking_err,gait_label,"
    "duty_fl,duty_fr,duty_rl,duty_rr,offset_fr,offset_rl,offset_rr,"
    "flight_frac,quad_frac";

inline constexpr char kGaitDiagramCsvHeader[] = "t,fl,fr,rl,rr";

inline constexpr char kTrainingCsvHeader[] =
    "iteration,mean_return,best_return,curriculum_range,wall_time";

inline constexpr char kRewardCsvHeader[] =
    "t,r_lin,r_ang,r_motion,r_en,r_aux_raw,r_total,rectified_power";

inline constexpr char kCircleCsvHeader[] = "step,t,x,y,error,accumulated";

void WriteSweepCsv(std::span<const SweepRow> rows, std::ostream& out);

// One row per sample: time and stance flags.
void WriteGaitDiagramCsv(const RolloutLog& log, std::ostream& out);

// Four horizontal bars (FL, FR, RL, RR) with filled stance intervals over
// the window.
std::string GaitDiagramSvg(const RolloutLog& log, TimeWindow window);

void WriteTrainingCsv(std::span<const TrainingRecord> history,
                      std::ostream& out);

// Per-step reward breakdown under `c`.
void WriteRewardCsv(const RolloutLog& log, const RewardConfig& c,
                    std::ostream& out);

// `times` and `positions` index-aligned with `result.errors`.
void WriteCircleCsv(std::span<const double> times,
                    std::span<const Point2> positions,
                    const CircleTrackingResult& result, std::ostream& out);

}  // namespace gaitlab

#endif  // GAITLAB_REPORT_H_
