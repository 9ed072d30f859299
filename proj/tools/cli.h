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

#ifndef GAITLAB_TOOLS_CLI_H_
#define GAITLAB_TOOLS_CLI_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace gaitlab::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // runtime failure
inline constexpr int kExitUsage = 2;    // usage, config or input-schema error

// Environment variable naming the default output directory.
inline constexpr char kOutDirEnv[] = "GAITLAB_OUT_DIR";

// Number of sweep points: floor((vmax - vmin) / step + 1e-9) + 1.
std::size_t SweepPointCount(double vmin, double vmax, double step);

// Entry point shared by the executable and the tests. `args` excludes the
// program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace gaitlab::cli

#endif  // GAITLAB_TOOLS_CLI_H_
