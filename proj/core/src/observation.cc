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

#include "gaitlab/observation.h"

#include <cmath>

#include "gaitlab/errors.h"

namespace gaitlab {
namespace {

const Frame kZeroFrame{};

double At(const std::vector<double>& v, std::size_t i) {
  return i < v.size() ? v[i] : 0.0;
}

}  // namespace

Frame MakeFrame(const StepSample& sample, Command cmd,
                const ObservationScaling& scaling) {
  Frame f{};
  f[0] = std::sin(sample.trunk_pitch);
  f[1] = std::cos(sample.trunk_pitch);
  f[2] = cmd.vx;
  f[3] = cmd.wz;
  for (int j = 0; j < kNumJoints; ++j) {
    const double nominal = scaling.nominal[j];
    f[4 + j] = At(sample.joint_positions, j) - nominal;
    f[12 + j] = At(sample.joint_velocities, j) * scaling.velocity_scale;
    // Before the first action the sample carries no action; treat as nominal.
    const double a =
        sample.action.empty() ? nominal : At(sample.action, j);
    f[20 + j] = (a - nominal) / scaling.action_scale;
  }
  return f;
}

void ObservationHistory::Push(const Frame& f) {
  if (length_ == 0) return;
  frames_.push_front(f);
  if (frames_.size() > length_) frames_.pop_back();
}

const Frame& ObservationHistory::at(std::size_t i) const {
  if (i >= length_) throw InputShapeError("history index out of range");
  return i < frames_.size() ? frames_[i] : kZeroFrame;
}

std::vector<double> BuildObservation(const StepSample& sample,
                                     const ObservationHistory& history,
                                     Command cmd,
                                     const ObservationScaling& scaling) {
  std::vector<double> obs;
  obs.reserve(ObservationSize(history.length()));
  const Frame current = MakeFrame(sample, cmd, scaling);
  obs.insert(obs.end(), current.begin(), current.end());
  for (std::size_t i = 0; i < history.length(); ++i) {
    const Frame& f = history.at(i);
    obs.insert(obs.end(), f.begin(), f.end());
  }
  return obs;
}

}  // namespace gaitlab
