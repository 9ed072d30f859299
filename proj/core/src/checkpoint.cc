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

#include "gaitlab/checkpoint.h"

#include <fstream>
#include <sstream>

#include "gaitlab/errors.h"
#include "json.hpp"

namespace gaitlab {

using nlohmann::json;

std::string SerializeCheckpoint(const Checkpoint& ckpt) {
  const LocomotionPolicy& p = ckpt.policy;
  json j = json::object();
  j["format"] = "gaitlab-policy";
  j["version"] = kCheckpointVersion;
  j["iteration"] = ckpt.iteration;
  j["config_hash"] = ckpt.config_hash;
  j["config"] = json::parse(DumpExperimentConfig(ckpt.config));
  j["layer_sizes"] = p.net.sizes();
  j["history"] = p.history;
  j["action_scale"] = p.action_scale;
  j["velocity_scale"] = p.velocity_scale;
  j["clock_frequency"] = p.clock_frequency;
  j["clock_gain"] = p.clock_gain;
  j["params"] = std::vector<double>(p.net.params().begin(), p.net.params().end());
  return j.dump(1) + "\n";
}

Checkpoint ParseCheckpoint(const std::string& text) {
  Checkpoint c;
  try {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != "gaitlab-policy") {
      throw Error("checkpoint: unexpected format tag");
    }
    if (j.at("version").get<int>() != kCheckpointVersion) {
      throw Error("checkpoint: unsupported version");
    }
    c.iteration = j.at("iteration").get<int>();
    c.config_hash = j.at("config_hash").get<std::string>();
    c.config = ParseExperimentConfig(j.at("config").dump());
    c.policy.net = Policy(j.at("layer_sizes").get<std::vector<int>>());
    c.policy.net.set_params(j.at("params").get<std::vector<double>>());
    c.policy.history = j.at("history").get<int>();
    c.policy.action_scale = j.at("action_scale").get<double>();
    c.policy.velocity_scale = j.at("velocity_scale").get<double>();
    c.policy.clock_frequency = j.at("clock_frequency").get<double>();
    c.policy.clock_gain = j.at("clock_gain").get<double>();
  } catch (const json::exception& e) {
    throw Error(std::string("checkpoint: ") + e.what());
  } catch (const InputShapeError& e) {
    throw Error(std::string("checkpoint: ") + e.what());
  }
  if (static_cast<std::size_t>(c.policy.net.input_size()) !=
      PolicyInputSize(c.policy.history, c.policy.clock_frequency)) {
    throw Error("checkpoint: input layer does not match the observation size");
  }
  if (ConfigHash(c.config) != c.config_hash) {
    throw Error("checkpoint: config hash mismatch");
  }
  return c;
}

void SaveCheckpoint(const Checkpoint& ckpt, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write checkpoint '" + path + "'");
  out << SerializeCheckpoint(ckpt);
  if (!out) throw Error("failed writing checkpoint '" + path + "'");
}

Checkpoint LoadCheckpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read checkpoint '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseCheckpoint(buffer.str());
}

}  // namespace gaitlab
