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

#include "gaitlab/curriculum.h"

#include <algorithm>
#include <cmath>

#include "gaitlab/errors.h"

namespace gaitlab {

void Curriculum::Validate() const {
  if (!(lin >= 0 && lin <= lin_max)) {
    throw ConfigError("curriculum.lin", "must satisfy 0 <= lin <= lin_max");
  }
  if (!(ang >= 0 && ang <= ang_max)) {
    throw ConfigError("curriculum.ang", "must satisfy 0 <= ang <= ang_max");
  }
  if (!(lin_step >= 0)) throw ConfigError("curriculum.lin_step", "must be >= 0");
  if (!(ang_step >= 0)) throw ConfigError("curriculum.ang_step", "must be >= 0");
  if (!(threshold_fraction >= 0 && threshold_fraction <= 1)) {
    throw ConfigError("curriculum.threshold_fraction", "must be in [0, 1]");
  }
  if (!(smoothing >= 0 && smoothing < 1)) {
    throw ConfigError("curriculum.smoothing", "must be in [0, 1)");
  }
}

Command SampleCommands(const Curriculum& cur, Rng& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double u = unit(rng);
  const double w = unit(rng);
  if (!cur.symmetric) u = 0.5 * (u + 1.0);
  Command c;
  c.vx = cur.lin == 0.0 ? 0.0 : std::clamp(u * cur.lin, -cur.lin, cur.lin);
  c.wz = cur.ang == 0.0 ? 0.0 : std::clamp(w * cur.ang, -cur.ang, cur.ang);
  return c;
}

std::vector<Command> SampleCommandBatch(const Curriculum& cur, int n, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Command> out;
  out.reserve(std::max(n, 0));
  for (int k = 0; k < n; ++k) {
    const double s = (k + unit(rng)) / n;
    const double u = cur.symmetric ? 2.0 * s - 1.0 : s;
    const double w = -1.0 + 2.0 * (k + unit(rng)) / n;
    Command c;
    c.vx = cur.lin == 0.0 ? 0.0 : std::clamp(u * cur.lin, -cur.lin, cur.lin);
    c.wz = cur.ang == 0.0 ? 0.0 : std::clamp(w * cur.ang, -cur.ang, cur.ang);
    out.push_back(c);
  }
  return out;
}

Curriculum UpdateCurriculum(const Curriculum& cur, double mean_return,
                            double threshold) {
  Curriculum next = cur;
  if (mean_return >= threshold) {
    next.lin = std::min(cur.lin + cur.lin_step, cur.lin_max);
    next.ang = std::min(cur.ang + cur.ang_step, cur.ang_max);
  }
  // Never shrink, even when a max was configured below the current range.
  next.lin = std::max(next.lin, cur.lin);
  next.ang = std::max(next.ang, cur.ang);
  return next;
}

double MaxReturnProxy(const RewardConfig& c, int steps, double dt) {
  return (1.0 + c.alpha_ang + c.alpha_en) * steps * dt;
}

}  // namespace gaitlab
