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

#include "gaitlab/reward.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "gaitlab/errors.h"

namespace gaitlab {
namespace {

// exp(-x) clamped away from zero so the reward factors stay in (0, 1] even
// when the exponent underflows.
double NegExp(double x) {
  return std::max(std::exp(-x), std::numeric_limits<double>::min());
}

void RequireFinite(double v, const char* field) {
  if (!std::isfinite(v)) {
    throw ConfigError(std::string("reward.") + field, "must be finite");
  }
}

}  // namespace

void RewardConfig::Validate() const {
  RequireFinite(sigma_v, "sigma_v");
  RequireFinite(sigma_w, "sigma_w");
  RequireFinite(alpha_ang, "alpha_ang");
  RequireFinite(sigma_en_x, "sigma_en_x");
  RequireFinite(sigma_en_z, "sigma_en_z");
  RequireFinite(alpha_en, "alpha_en");
  RequireFinite(denom_epsilon, "denom_epsilon");
  if (sigma_v <= 0) throw ConfigError("reward.sigma_v", "must be > 0");
  if (sigma_w <= 0) throw ConfigError("reward.sigma_w", "must be > 0");
  if (sigma_en_x < 0) throw ConfigError("reward.sigma_en_x", "must be >= 0");
  if (sigma_en_z < 0) throw ConfigError("reward.sigma_en_z", "must be >= 0");
  if (sigma_en_x == 0 && sigma_en_z == 0) {
    throw ConfigError("reward.sigma_en_x",
                      "sigma_en_x and sigma_en_z must not both be zero");
  }
  if (alpha_en < 0) throw ConfigError("reward.alpha_en", "must be >= 0");
  if (alpha_ang < 0) throw ConfigError("reward.alpha_ang", "must be >= 0");
  if (denom_epsilon <= 0) {
    throw ConfigError("reward.denom_epsilon", "must be > 0");
  }
  if (!(aux.collision >= 0)) {
    throw ConfigError("reward.aux_weights.collision", "must be >= 0");
  }
  if (!(aux.action_rate >= 0)) {
    throw ConfigError("reward.aux_weights.action_rate", "must be >= 0");
  }
  if (!(aux.orientation >= 0)) {
    throw ConfigError("reward.aux_weights.orientation", "must be >= 0");
  }
}

MotionTerms MotionReward(const StepSample& s, const RewardConfig& c) {
  const double ex = s.vx - s.cmd_vx;
  const double ey = s.vy - s.cmd_vy;
  const double ew = s.wz - s.cmd_wz;
  MotionTerms m;
  m.r_lin = NegExp((ex * ex + ey * ey) / c.sigma_v);
  m.r_ang = NegExp(ew * ew / c.sigma_w);
  m.r_motion = m.r_lin + c.alpha_ang * m.r_ang;
  return m;
}

double RectifiedPower(const StepSample& s) {
  if (s.joint_torques.size() != s.joint_velocities.size()) {
    throw InputShapeError(
        "joint_torques has " + std::to_string(s.joint_torques.size()) +
        " entries but joint_velocities has " +
        std::to_string(s.joint_velocities.size()));
  }
  double p = 0.0;
  for (std::size_t i = 0; i < s.joint_torques.size(); ++i) {
    p += std::abs(s.joint_torques[i]) * std::abs(s.joint_velocities[i]);
  }
  return p;
}

double EnergyDenominator(const StepSample& s, const RewardConfig& c) {
  const double d = c.sigma_en_x * std::abs(s.vx) + c.sigma_en_z * std::abs(s.wz);
  return std::max(d, c.denom_epsilon);
}

double EnergyReward(const StepSample& s, const RewardConfig& c) {
  return NegExp(RectifiedPower(s) / EnergyDenominator(s, c));
}

double AuxReward(const StepSample& s, const RewardConfig& c) {
  double rate = 0.0;
  const std::size_t n = std::min(s.action.size(), s.prev_action.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double d = s.action[i] - s.prev_action[i];
    rate += d * d;
  }
  return c.aux.collision * (s.collision_flag ? 1.0 : 0.0) +
         c.aux.action_rate * rate +
         c.aux.orientation * s.trunk_pitch * s.trunk_pitch;
}

RewardBreakdown TotalReward(const StepSample& s, const RewardConfig& c) {
  RewardBreakdown b;
  const MotionTerms m = MotionReward(s, c);
  b.r_lin = m.r_lin;
  b.r_ang = m.r_ang;
  b.r_motion = m.r_motion;
  b.r_en = EnergyReward(s, c);
  b.r_aux_raw = AuxReward(s, c);
  b.r_total = Recompose(b, c);
  return b;
}

double Recompose(const RewardBreakdown& b, const RewardConfig& c) {
  return (b.r_motion + c.alpha_en * b.r_en) * std::exp(-b.r_aux_raw);
}

}  // namespace gaitlab
