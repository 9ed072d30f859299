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

#include "gaitlab/experiment_config.h"

#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "gaitlab/errors.h"
#include "json.hpp"

namespace gaitlab {
namespace {

using nlohmann::json;

// Reads fields out of a JSON object, remembering which keys were consumed so
// that leftovers can be reported as unknown.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(Trimmed(), "expected an object");
  }

  void Num(const char* key, double& v) {
    if (const json* x = Take(key)) {
      if (!x->is_number()) throw ConfigError(Path(key), "expected a number");
      v = x->get<double>();
    }
  }
  void Int(const char* key, int& v) {
    if (const json* x = Take(key)) {
      if (!x->is_number_integer()) {
        throw ConfigError(Path(key), "expected an integer");
      }
      v = x->get<int>();
    }
  }
  void U64(const char* key, std::uint64_t& v) {
    if (const json* x = Take(key)) {
      if (!x->is_number_unsigned()) {
        throw ConfigError(Path(key), "expected a non-negative integer");
      }
      v = x->get<std::uint64_t>();
    }
  }
  void Bool(const char* key, bool& v) {
    if (const json* x = Take(key)) {
      if (!x->is_boolean()) throw ConfigError(Path(key), "expected a boolean");
      v = x->get<bool>();
    }
  }
  void Str(const char* key, std::string& v) {
    if (const json* x = Take(key)) {
      if (!x->is_string()) throw ConfigError(Path(key), "expected a string");
      v = x->get<std::string>();
    }
  }
  template <typename R>
  void Range(const char* key, R& r) {
    if (const json* x = Take(key)) {
      if (!x->is_array() || x->size() != 2 || !(*x)[0].is_number() ||
          !(*x)[1].is_number()) {
        throw ConfigError(Path(key), "expected [lower, upper]");
      }
      r.lower = (*x)[0].get<double>();
      r.upper = (*x)[1].get<double>();
    }
  }
  void IntList(const char* key, std::vector<int>& v) {
    if (const json* x = Take(key)) {
      if (!x->is_array()) throw ConfigError(Path(key), "expected an array");
      v.clear();
      for (const json& e : *x) {
        if (!e.is_number_integer()) {
          throw ConfigError(Path(key), "expected integers");
        }
        v.push_back(e.get<int>());
      }
    }
  }
  void NumList(const char* key, std::vector<double>& v) {
    if (const json* x = Take(key)) {
      if (!x->is_array()) throw ConfigError(Path(key), "expected an array");
      v.clear();
      for (const json& e : *x) {
        if (!e.is_number()) throw ConfigError(Path(key), "expected numbers");
        v.push_back(e.get<double>());
      }
    }
  }
  void Rule(const char* key, StepRule& v) {
    std::string name = StepRuleName(v);
    Str(key, name);
    try {
      v = ParseStepRule(name);
    } catch (const ConfigError& e) {
      throw ConfigError(Path(key), e.what());
    }
  }
  void Block(const char* key, const std::function<void(Reader&)>& fn) {
    if (const json* x = Take(key)) {
      Reader child(*x, Path(key) + ".");
      fn(child);
      child.Finish();
    }
  }

  void Finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError(Path(key), "unknown key");
    }
  }

 private:
  const json* Take(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }
  std::string Path(const std::string& key) const { return path_ + key; }
  std::string Trimmed() const {
    return path_.empty() ? path_ : path_.substr(0, path_.size() - 1);
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

// Writes every field into a JSON object.
class Writer {
 public:
  json& out() { return j_; }

  void Num(const char* key, const double& v) { j_[key] = v; }
  void Int(const char* key, const int& v) { j_[key] = v; }
  void U64(const char* key, const std::uint64_t& v) { j_[key] = v; }
  void Bool(const char* key, const bool& v) { j_[key] = v; }
  void Str(const char* key, const std::string& v) { j_[key] = v; }
  template <typename R>
  void Range(const char* key, const R& r) {
    j_[key] = json::array({r.lower, r.upper});
  }
  void IntList(const char* key, const std::vector<int>& v) { j_[key] = v; }
  void NumList(const char* key, const std::vector<double>& v) { j_[key] = v; }
  void Rule(const char* key, const StepRule& v) { j_[key] = StepRuleName(v); }
  void Block(const char* key, const std::function<void(Writer&)>& fn) {
    Writer child;
    child.j_ = json::object();
    fn(child);
    j_[key] = std::move(child.j_);
  }

 private:
  json j_ = json::object();
};

// Single field list shared by reading and writing. `C` is ExperimentConfig
// or const ExperimentConfig.
template <typename B, typename C>
void Bind(B& b, C& c) {
  b.U64("seed", c.seed);
  b.Str("output_dir", c.output_dir);
  b.Block("reward", [&](B& r) {
    auto& x = c.reward;
    r.Num("sigma_v", x.sigma_v);
    r.Num("sigma_w", x.sigma_w);
    r.Num("alpha_ang", x.alpha_ang);
    r.Num("sigma_en_x", x.sigma_en_x);
    r.Num("sigma_en_z", x.sigma_en_z);
    r.Num("alpha_en", x.alpha_en);
    r.Num("denom_epsilon", x.denom_epsilon);
    r.Block("aux_weights", [&](B& a) {
      a.Num("collision", x.aux.collision);
      a.Num("action_rate", x.aux.action_rate);
      a.Num("orientation", x.aux.orientation);
    });
  });
  b.Block("robot", [&](B& r) {
    auto& x = c.robot;
    r.Num("trunk_mass", x.trunk_mass);
    r.Num("trunk_inertia", x.trunk_inertia);
    r.Num("trunk_length", x.trunk_length);
    r.Num("trunk_thickness", x.trunk_thickness);
    r.Num("hip_x_front", x.hip_x_front);
    r.Num("hip_x_rear", x.hip_x_rear);
    auto link = [&](const char* key, auto& l) {
      r.Block(key, [&](B& k) {
        k.Num("mass", l.mass);
        k.Num("length", l.length);
        k.Num("inertia", l.inertia);
        k.Num("com_fraction", l.com_fraction);
      });
    };
    link("thigh", x.thigh);
    link("shank", x.shank);
    r.Num("joint_armature", x.joint_armature);
    r.Num("torque_limit", x.torque_limit);
    r.Num("velocity_limit", x.velocity_limit);
    r.Range("hip_range", x.hip_range);
    r.Range("knee_range", x.knee_range);
    r.Num("kp", x.kp);
    r.Num("kd", x.kd);
    r.Num("foot_radius", x.foot_radius);
    r.Num("nominal_hip", x.nominal_hip);
    r.Num("nominal_knee", x.nominal_knee);
  });
  b.Block("sim", [&](B& s) {
    auto& x = c.sim;
    s.Num("friction", x.friction);
    s.Num("added_mass", x.added_mass);
    s.Num("gravity", x.gravity);
    s.Num("physics_dt", x.physics_dt);
    s.Int("control_substeps", x.control_substeps);
    s.Block("contact", [&](B& k) {
      k.Num("stiffness", x.contact.stiffness);
      k.Num("damping", x.contact.damping);
      k.Num("tangential_stiffness", x.contact.tangential_stiffness);
      k.Num("tangential_damping", x.contact.tangential_damping);
      k.Num("stance_threshold", x.contact.stance_threshold);
    });
  });
  b.Block("domain_randomization", [&](B& d) {
    auto& x = c.domain_randomization;
    d.Range("friction", x.friction);
    d.Range("added_mass", x.added_mass);
    d.Block("noise", [&](B& n) {
      n.Num("gravity", x.noise.gravity);
      n.Num("joint_position", x.noise.joint_position);
      n.Num("joint_velocity", x.noise.joint_velocity);
    });
  });
  b.Block("train", [&](B& t) {
    auto& x = c.train;
    t.Int("population", x.population);
    t.Num("sigma", x.sigma);
    t.Num("learning_rate", x.learning_rate);
    t.Rule("optimizer", x.optimizer);
    t.Num("weight_decay", x.weight_decay);
    t.Int("iterations", x.iterations);
    t.Int("episodes_per_eval", x.episodes_per_eval);
    t.Int("episode_steps", x.episode_steps);
    t.Int("history", x.history);
    t.IntList("hidden", x.hidden);
    t.Num("action_scale", x.action_scale);
    t.Num("velocity_scale", x.velocity_scale);
    t.Num("init_output_gain", x.init_output_gain);
    t.Num("clock_frequency", x.clock_frequency);
    t.Num("clock_gain", x.clock_gain);
    t.Int("jobs", x.jobs);
    t.Int("eval_interval", x.eval_interval);
    t.NumList("validation_commands", x.validation_commands);
    t.Int("validation_steps", x.validation_steps);
  });
  b.Block("curriculum", [&](B& k) {
    auto& x = c.curriculum;
    k.Num("lin", x.lin);
    k.Num("ang", x.ang);
    k.Num("lin_step", x.lin_step);
    k.Num("ang_step", x.ang_step);
    k.Num("lin_max", x.lin_max);
    k.Num("ang_max", x.ang_max);
    k.Num("threshold_fraction", x.threshold_fraction);
    k.Num("smoothing", x.smoothing);
    k.Bool("symmetric", x.symmetric);
  });
}

}  // namespace

void ExperimentConfig::Validate() const {
  reward.Validate();
  robot.Validate();
  sim.Validate();
  domain_randomization.Validate();
  train.Validate();
  curriculum.Validate();
}

TrainConfig ExperimentConfig::Train() const {
  TrainConfig tc = train;
  tc.seed = seed;
  return tc;
}

ExperimentConfig ParseExperimentConfig(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  ExperimentConfig config;
  Reader reader(j, "");
  Bind(reader, config);
  reader.Finish();
  config.Validate();
  return config;
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseExperimentConfig(buffer.str());
}

std::string DumpExperimentConfig(const ExperimentConfig& config, int indent) {
  Writer writer;
  Bind(writer, config);
  return writer.out().dump(indent);
}

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string ConfigHash(const ExperimentConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(
                    Fnv1a64(DumpExperimentConfig(config))));
  return buf;
}

}  // namespace gaitlab
