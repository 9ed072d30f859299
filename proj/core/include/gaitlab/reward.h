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

// Per-step locomotion reward: velocity tracking, distance-averaged energy
// and exponentiated auxiliary penalties.
//
//   R = (R_lin + alpha_ang * R_ang + alpha_en * R_en) * exp(-R_aux)
//
// Every function here is pure and safe to call concurrently.

#ifndef GAITLAB_REWARD_H_
#define GAITLAB_REWARD_H_

#include <array>
#include <vector>

namespace gaitlab {

// Foot order used everywhere in the library.
enum Foot : int { kFrontLeft = 0, kFrontRight = 1, kRearLeft = 2, kRearRight = 3 };
inline constexpr int kNumFeet = 4;

struct AuxWeights {
  double collision = 1.0;
  double action_rate = 0.01;
  double orientation = 1.0;
};

struct RewardConfig {
  double sigma_v = 0.25;       // (m/s)^2
  double sigma_w = 0.25;       // (rad/s)^2
  double alpha_ang = 0.5;
  double sigma_en_x = 1000.0;  // W per m/s
  double sigma_en_z = 500.0;   // W per rad/s
  double alpha_en = 1.0;
  AuxWeights aux;
  // Floor of the energy-reward denominator (W); only active near standstill.
  double denom_epsilon = 1.0;

  // Throws ConfigError naming the first violated field.
  void Validate() const;
};

// One control-step snapshot. Twist fields are base-frame; base_x/base_y are
// the world-frame planar position of the base.
struct StepSample {
  double t = 0.0;
  double cmd_vx = 0.0;
  double cmd_vy = 0.0;
  double cmd_wz = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  double wz = 0.0;
  std::vector<double> joint_torques;
  std::vector<double> joint_velocities;
  std::vector<double> joint_positions;
  std::vector<double> prev_action;
  std::vector<double> action;
  std::array<bool, kNumFeet> foot_contact{};
  double trunk_pitch = 0.0;
  double trunk_height = 0.0;
  bool collision_flag = false;
  double base_x = 0.0;
  double base_y = 0.0;
};

struct MotionTerms {
  double r_lin = 0.0;
  double r_ang = 0.0;
  double r_motion = 0.0;
};

struct RewardBreakdown {
  double r_lin = 0.0;
  double r_ang = 0.0;
  double r_motion = 0.0;
  double r_en = 0.0;
  double r_aux_raw = 0.0;
  double r_total = 0.0;
};

MotionTerms MotionReward(const StepSample& s, const RewardConfig& c);

// Sum over joints of |tau_i| * |qdot_i|. Motors are not credited for
// negative work. Throws InputShapeError on a length mismatch.
double RectifiedPower(const StepSample& s);

// Denominator of the energy reward: sigma_en_x |vx| + sigma_en_z |wz|,
// floored at denom_epsilon.
double EnergyDenominator(const StepSample& s, const RewardConfig& c);

double EnergyReward(const StepSample& s, const RewardConfig& c);

// Weighted sum of the collision indicator, squared action rate and squared
// trunk pitch. Always >= 0.
double AuxReward(const StepSample& s, const RewardConfig& c);

RewardBreakdown TotalReward(const StepSample& s, const RewardConfig& c);

// Recomputes r_total from the other fields of a breakdown.
double Recompose(const RewardBreakdown& b, const RewardConfig& c);

}  // namespace gaitlab

#endif  // GAITLAB_REWARD_H_
