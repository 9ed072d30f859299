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

#ifndef GAITLAB_CURRICULUM_H_
#define GAITLAB_CURRICULUM_H_

#include <vector>

#include "gaitlab/planar_sim.h"
#include "gaitlab/reward.h"

namespace gaitlab {

// Symmetric command ranges [-lin, lin] m/s and [-ang, ang] rad/s that only
// ever grow, by `lin_step` / `ang_step`, when the mean episode return reaches
// `threshold_fraction` of the best achievable return.
struct Curriculum {
  double lin = 1.0;
  double ang = 0.0;
  double lin_step = 0.25;
  double ang_step = 0.0;
  double lin_max = 2.5;
  double ang_max = 0.0;
  double threshold_fraction = 0.6;
  // Weight of the previous estimate in the exponential moving average of the
  // per-iteration return that is compared against the threshold.
  double smoothing = 0.9;
  // Draw linear commands from [-lin, lin]; false restricts them to [0, lin].
  bool symmetric = true;

  void Validate() const;
};

// Uniform draw within the current ranges. A zero-width range yields exactly
// zero. Consumes two draws regardless.
Command SampleCommands(const Curriculum& cur, Rng& rng);

// `n` draws, the k-th uniform within the k-th of n equal slices of each
// range, so a batch covers the range evenly while each draw stays uniform
// over the range when k is chosen at random.
std::vector<Command> SampleCommandBatch(const Curriculum& cur, int n, Rng& rng);

Curriculum UpdateCurriculum(const Curriculum& cur, double mean_return,
                            double threshold);

// Upper bound of an episode return: every step at perfect tracking, zero
// power and zero auxiliary penalty.
double MaxReturnProxy(const RewardConfig& c, int steps, double dt);

}  // namespace gaitlab

#endif  // GAITLAB_CURRICULUM_H_
