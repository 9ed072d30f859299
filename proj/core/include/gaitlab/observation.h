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

#ifndef GAITLAB_OBSERVATION_H_
#define GAITLAB_OBSERVATION_H_

#include <cstddef>
#include <deque>
#include <vector>

#include "gaitlab/planar_sim.h"
#include "gaitlab/reward.h"

namespace gaitlab {

// Channel order of one observation frame:
//   [0]      sin(pitch)                 gravity projection proxy
//   [1]      cos(pitch)
//   [2]      commanded vx
//   [3]      commanded wz
//   [4:12]   joint position - nominal
//   [12:20]  joint velocity * velocity_scale
//   [20:28]  previous action, normalized to [-1, 1]
inline constexpr std::size_t kFrameSize = 28;

struct ObservationScaling {
  JointVector nominal{};
  double velocity_scale = 0.05;
  double action_scale = 0.6;  // rad per unit network output
};

using Frame = std::array<double, kFrameSize>;

Frame MakeFrame(const StepSample& sample, Command cmd,
                const ObservationScaling& scaling);

// The last `length` frames, newest first; missing frames read as zeros.
class ObservationHistory {
 public:
  explicit ObservationHistory(std::size_t length) : length_(length) {}

  std::size_t length() const { return length_; }
  void Push(const Frame& f);
  void Clear() { frames_.clear(); }
  // i = 0 is the most recent frame.
  const Frame& at(std::size_t i) const;

 private:
  std::size_t length_;
  std::deque<Frame> frames_;
};

inline std::size_t ObservationSize(std::size_t history) {
  return kFrameSize * (history + 1);
}

// Current frame followed by the history, newest first. The caller pushes the
// current frame afterwards.
std::vector<double> BuildObservation(const StepSample& sample,
                                     const ObservationHistory& history,
                                     Command cmd,
                                     const ObservationScaling& scaling);

}  // namespace gaitlab

#endif  // GAITLAB_OBSERVATION_H_
