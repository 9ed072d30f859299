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

// Constructed inputs with known answers, shared by unit and acceptance tests.

#ifndef GAITLAB_TESTS_FIXTURES_H_
#define GAITLAB_TESTS_FIXTURES_H_

#include <array>
#include <cmath>

#include "gaitlab/gait_metrics.h"
#include "gaitlab/rollout_log.h"

namespace gaitlab::testing {

struct GaitSpec {
  std::array<double, kNumFeet> offsets{};  // touchdown phase per foot
  std::array<double, kNumFeet> duty{};
};

// Periodic schedule: foot f is in stance while
// ((k + shift - round(offset_f P)) mod P) < round(duty_f P).
inline ContactSchedule MakeSchedule(const GaitSpec& g, int period, int strides,
                                    double dt, int shift = 0) {
  ContactSchedule cs;
  cs.dt = dt;
  const int steps = period * strides;
  for (int f = 0; f < kNumFeet; ++f) {
    const int off = static_cast<int>(std::lround(g.offsets[f] * period));
    const int stance = static_cast<int>(std::lround(g.duty[f] * period));
    for (int k = 0; k < steps; ++k) {
      const int phase = (((k + shift - off) % period) + period) % period;
      cs.stance[f].push_back(phase < stance);
    }
  }
  return cs;
}

// Straight-line log: constant forward speed `v` and rectified power
// `power` (eight joints, unit torque).
inline RolloutLog ConstantLog(double v, double power, int steps, double dt) {
  RolloutLog log;
  log.header.dt_control = dt;
  log.header.cmd_vx = v;
  for (int k = 0; k < steps; ++k) {
    StepSample s;
    s.t = (k + 1) * dt;
    s.cmd_vx = v;
    s.vx = v;
    s.joint_torques.assign(8, 1.0);
    s.joint_velocities.assign(8, power / 8.0);
    s.base_x = v * s.t;
    log.samples.push_back(s);
  }
  return log;
}

}  // namespace gaitlab::testing

#endif  // GAITLAB_TESTS_FIXTURES_H_
