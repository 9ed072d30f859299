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

#include "gaitlab/log_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>

#include "gaitlab/errors.h"
#include "json.hpp"

namespace gaitlab {
namespace {

using nlohmann::json;

json Number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json Numbers(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(Number(x));
  return a;
}

json HeaderJson(const RolloutHeader& h) {
  json j = json::object();
  j["schema_version"] = h.schema_version;
  j["config_hash"] = h.config_hash;
  j["cmd_vx"] = Number(h.cmd_vx);
  j["cmd_vy"] = Number(h.cmd_vy);
  j["cmd_wz"] = Number(h.cmd_wz);
  j["seed"] = h.seed;
  j["dt_control"] = Number(h.dt_control);
  j["source"] = h.source;
  j["terminated_early"] = h.terminated_early;
  j["diverged"] = h.diverged;
  return j;
}

json SampleJson(const StepSample& s) {
  json j = json::object();
  j["t"] = Number(s.t);
  j["cmd_vx"] = Number(s.cmd_vx);
  j["cmd_vy"] = Number(s.cmd_vy);
  j["cmd_wz"] = Number(s.cmd_wz);
  j["vx"] = Number(s.vx);
  j["vy"] = Number(s.vy);
  j["wz"] = Number(s.wz);
  j["joint_torques"] = Numbers(s.joint_torques);
  j["joint_velocities"] = Numbers(s.joint_velocities);
  j["joint_positions"] = Numbers(s.joint_positions);
  j["prev_action"] = Numbers(s.prev_action);
  j["action"] = Numbers(s.action);
  j["foot_contact"] = json::array();
  for (bool c : s.foot_contact) j["foot_contact"].push_back(c);
  j["trunk_pitch"] = Number(s.trunk_pitch);
  j["trunk_height"] = Number(s.trunk_height);
  j["collision_flag"] = s.collision_flag;
  j["base_x"] = Number(s.base_x);
  j["base_y"] = Number(s.base_y);
  return j;
}

// Field access for one record with strict key checking.
class RecordReader {
 public:
  RecordReader(const json& j, std::size_t record) : j_(j), record_(record) {
    if (!j_.is_object()) Fail("expected a JSON object");
  }

  double Num(const char* key, bool required, double fallback = 0.0) {
    const json* x = Take(key, required);
    if (!x) return fallback;
    return ToDouble(*x, key);
  }
  std::vector<double> Nums(const char* key, bool required) {
    const json* x = Take(key, required);
    std::vector<double> v;
    if (!x) return v;
    if (!x->is_array()) Fail(std::string("'") + key + "' must be an array");
    v.reserve(x->size());
    for (const json& e : *x) v.push_back(ToDouble(e, key));
    return v;
  }
  bool Bool(const char* key, bool required) {
    const json* x = Take(key, required);
    if (!x) return false;
    if (!x->is_boolean()) Fail(std::string("'") + key + "' must be a boolean");
    return x->get<bool>();
  }
  std::string Str(const char* key, bool required) {
    const json* x = Take(key, required);
    if (!x) return {};
    if (!x->is_string()) Fail(std::string("'") + key + "' must be a string");
    return x->get<std::string>();
  }
  std::uint64_t U64(const char* key, bool required) {
    const json* x = Take(key, required);
    if (!x) return 0;
    if (!x->is_number_unsigned()) {
      Fail(std::string("'") + key + "' must be a non-negative integer");
    }
    return x->get<std::uint64_t>();
  }
  int Int(const char* key, bool required) {
    const json* x = Take(key, required);
    if (!x) return 0;
    if (!x->is_number_integer()) {
      Fail(std::string("'") + key + "' must be an integer");
    }
    return x->get<int>();
  }
  const json* Raw(const char* key, bool required) { return Take(key, required); }

  void Finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) Fail("unknown field '" + key + "'");
    }
  }

  [[noreturn]] void Fail(const std::string& msg) const {
    throw SchemaError(record_, msg);
  }

 private:
  const json* Take(const char* key, bool required) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) {
      if (required) Fail(std::string("missing field '") + key + "'");
      return nullptr;
    }
    return &*it;
  }
  double ToDouble(const json& x, const char* key) const {
    if (x.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (!x.is_number()) Fail(std::string("'") + key + "' must be numeric");
    return x.get<double>();
  }

  const json& j_;
  std::size_t record_;
  std::set<std::string> seen_;
};

json ParseLine(const std::string& line, std::size_t record) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw SchemaError(record, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

void WriteLog(const RolloutLog& log, std::ostream& out) {
  json header = json::object();
  header["header"] = HeaderJson(log.header);
  out << header.dump() << '\n';
  for (const StepSample& s : log.samples) out << SampleJson(s).dump() << '\n';
}

void SaveLog(const RolloutLog& log, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write log file '" + path + "'");
  WriteLog(log, out);
  out.flush();
  if (!out) throw Error("failed writing log file '" + path + "'");
}

RolloutLog ReadLog(std::istream& in) {
  RolloutLog log;
  std::string line;
  if (!std::getline(in, line)) throw SchemaError(0, "empty log, header missing");
  {
    const json j = ParseLine(line, 0);
    RecordReader outer(j, 0);
    const json* h = outer.Raw("header", true);
    outer.Finish();
    RecordReader r(*h, 0);
    RolloutHeader& hd = log.header;
    hd.schema_version = r.Int("schema_version", true);
    if (hd.schema_version != kLogSchemaVersion) {
      r.Fail("schema version " + std::to_string(hd.schema_version) +
             " does not match reader version " +
             std::to_string(kLogSchemaVersion));
    }
    hd.config_hash = r.Str("config_hash", false);
    hd.cmd_vx = r.Num("cmd_vx", false);
    hd.cmd_vy = r.Num("cmd_vy", false);
    hd.cmd_wz = r.Num("cmd_wz", false);
    hd.seed = r.U64("seed", false);
    hd.dt_control = r.Num("dt_control", true);
    hd.source = r.Str("source", false);
    hd.terminated_early = r.Bool("terminated_early", false);
    hd.diverged = r.Bool("diverged", false);
    r.Finish();
  }
  std::size_t record = 0;
  while (std::getline(in, line)) {
    ++record;
    if (line.empty()) throw SchemaError(record, "empty line");
    const json j = ParseLine(line, record);
    RecordReader r(j, record);
    StepSample s;
    s.t = r.Num("t", true);
    s.cmd_vx = r.Num("cmd_vx", true);
    s.cmd_vy = r.Num("cmd_vy", false);
    s.cmd_wz = r.Num("cmd_wz", false);
    s.vx = r.Num("vx", true);
    s.vy = r.Num("vy", false);
    s.wz = r.Num("wz", false);
    s.joint_torques = r.Nums("joint_torques", true);
    s.joint_velocities = r.Nums("joint_velocities", true);
    s.joint_positions = r.Nums("joint_positions", false);
    s.prev_action = r.Nums("prev_action", false);
    s.action = r.Nums("action", false);
    const json* fc = r.Raw("foot_contact", true);
    if (!fc->is_array() || fc->size() != kNumFeet) {
      r.Fail("'foot_contact' must hold 4 booleans");
    }
    for (int f = 0; f < kNumFeet; ++f) {
      if (!(*fc)[f].is_boolean()) r.Fail("'foot_contact' must hold 4 booleans");
      s.foot_contact[f] = (*fc)[f].get<bool>();
    }
    s.trunk_pitch = r.Num("trunk_pitch", false);
    s.trunk_height = r.Num("trunk_height", false);
    s.collision_flag = r.Bool("collision_flag", false);
    s.base_x = r.Num("base_x", false);
    s.base_y = r.Num("base_y", false);
    r.Finish();
    log.samples.push_back(std::move(s));
  }
  log.Validate();
  return log;
}

RolloutLog LoadLog(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read log file '" + path + "'");
  return ReadLog(in);
}

}  // namespace gaitlab
