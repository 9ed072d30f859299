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

// JSON-lines rollout logs, schema version kLogSchemaVersion.
//
// Line 0:  {"header": {"schema_version", "config_hash", "cmd_vx", "cmd_vy",
//           "cmd_wz", "seed", "dt_control", "source", "terminated_early",
//           "diverged"}}
// Line k:  one StepSample per line with the StepSample field names.
//          Required: t, cmd_vx, vx, joint_torques, joint_velocities,
//          foot_contact (4 booleans, FL FR RL RR). Every other field is
//          optional and defaults to zero / empty / false.
//
// Numbers use the shortest decimal that reads back to the same double, so a
// write-read cycle is bitwise exact. Non-finite values are written as null
// and read back as NaN.

#ifndef GAITLAB_LOG_IO_H_
#define GAITLAB_LOG_IO_H_

#include <iosfwd>
#include <string>

#include "gaitlab/rollout_log.h"

namespace gaitlab {

void WriteLog(const RolloutLog& log, std::ostream& out);

// Throws Error when the file cannot be written.
void SaveLog(const RolloutLog& log, const std::string& path);

// Parses and validates. Throws SchemaError naming the first bad record
// (header = record 0).
RolloutLog ReadLog(std::istream& in);

// Throws Error when the file cannot be opened, SchemaError on bad content.
RolloutLog LoadLog(const std::string& path);

// Shortest round-trip decimal representation; "nan", "inf", "-inf" for
// non-finite values.
std::string FormatDouble(double v);

}  // namespace gaitlab

#endif  // GAITLAB_LOG_IO_H_
