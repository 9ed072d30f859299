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

#include "gaitlab/rollout_log.h"

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "gaitlab/errors.h"

namespace gaitlab {

void RolloutLog::Validate() const {
  if (header.schema_version != kLogSchemaVersion) {
    throw SchemaError(0, "schema_version " +
                             std::to_string(header.schema_version) +
                             " does not match reader version " +
                             std::to_string(kLogSchemaVersion));
  }
  if (!(header.dt_control > 0) || !std::isfinite(header.dt_control)) {
    throw SchemaError(0, "dt_control must be positive and finite");
  }
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const StepSample& s = samples[k];
    const std::size_t record = k + 1;
    if (s.joint_torques.size() != s.joint_velocities.size()) {
      throw SchemaError(record,
                        "joint_torques and joint_velocities differ in length");
    }
    if (!s.joint_positions.empty() &&
        s.joint_positions.size() != s.joint_torques.size()) {
      throw SchemaError(record, "joint_positions length mismatch");
    }
    if (!std::isfinite(s.t)) throw SchemaError(record, "t is not finite");
    if (k > 0) {
      const double step = s.t - samples[k - 1].t;
      if (!(step > 0)) throw SchemaError(record, "t is not strictly increasing");
      if (std::abs(step - header.dt_control) > 1e-9) {
        throw SchemaError(record, "sample spacing differs from dt_control");
      }
    }
  }
}

TimeWindow FullWindow(const RolloutLog& log) {
  if (log.samples.empty()) return {0.0, 0.0};
  return {log.samples.front().t,
          std::nextafter(log.samples.back().t,
                         std::numeric_limits<double>::infinity())};
}

TimeWindow SteadyStateWindow(const RolloutLog& log, double fraction) {
  TimeWindow w = FullWindow(log);
  if (log.samples.empty()) return w;
  const std::size_t n = log.samples.size();
  const auto skip = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(n) + 1e-9));
  if (skip < n) w.begin = log.samples[skip].t;
  return w;
}

}  // namespace gaitlab
