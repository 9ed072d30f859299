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

// Sagittal-plane quadruped: a floating trunk (x, z, pitch) carrying four
// independent two-link legs on flat ground.
//
// Conventions
//   * World x forward, z up. Pitch is counter-clockwise (nose up) positive.
//   * A link at absolute angle phi points along (sin phi, -cos phi), so zero
//     hangs straight down and positive swings the foot forward.
//   * Joint vector order is leg-major: FL hip, FL knee, FR hip, FR knee,
//     RL hip, RL knee, RR hip, RR knee. Hip angles are relative to the trunk,
//     knee angles relative to the thigh.
//   * FL/FR share the front hip location and RL/RR the rear one; they are
//     kinematically coincident in the plane but dynamically independent.

#ifndef GAITLAB_PLANAR_SIM_H_
#define GAITLAB_PLANAR_SIM_H_

#include <array>
#include <cstdint>
#include <random>

#include "gaitlab/reward.h"

namespace gaitlab {

inline constexpr int kNumJoints = 8;
using JointVector = std::array<double, kNumJoints>;

struct LinkParams {
  double mass = 0.5;      // kg
  double length = 0.21;   // m
  double inertia = 0.5 * 0.21 * 0.21 / 12.0;  // kg m^2 about the COM
  double com_fraction = 0.5;  // COM distance from the proximal joint / length
};

struct JointRange {
  double lower = 0.0;
  double upper = 0.0;
};

struct RobotModel {
  double trunk_mass = 10.0;       // kg
  double trunk_inertia = 0.129;   // kg m^2, pitch axis
  double trunk_length = 0.38;     // m
  double trunk_thickness = 0.1;   // m
  double hip_x_front = 0.19;      // m, body frame
  double hip_x_rear = -0.19;      // m, body frame
  LinkParams thigh;
  LinkParams shank;
  double joint_armature = 0.01;   // reflected rotor inertia, kg m^2
  double torque_limit = 20.0;     // N m
  double velocity_limit = 30.0;   // rad/s
  JointRange hip_range{-2.0, 0.8};
  JointRange knee_range{0.3, 2.7};
  double kp = 150.0;              // N m / rad
  double kd = 3.0;                // N m s / rad
  double foot_radius = 0.02;      // m
  double nominal_hip = -0.7752;   // rad
  double nominal_knee = 1.5504;   // rad

  void Validate() const;

  JointVector NominalPose() const;
  JointRange Range(int joint) const {
    return joint % 2 == 0 ? hip_range : knee_range;
  }
  double HipX(int foot) const {
    return foot < kRearLeft ? hip_x_front : hip_x_rear;
  }
  // Height of the trunk origin above ground when standing at the nominal
  // pose with the feet just touching.
  double NominalStandHeight() const;
};

struct ContactParams {
  double stiffness = 2.0e4;             // N/m
  double damping = 200.0;               // N s/m
  double tangential_stiffness = 5.0e3;  // N/m, stick spring
  double tangential_damping = 300.0;    // N s/m, viscous slope of the regularization
  double stance_threshold = 1.0;        // N, normal force that counts as stance

  void Validate() const;
};

// Environment parameters that may vary per episode.
struct EnvParams {
  double friction = 1.0;
  double added_mass = 0.0;  // kg, added at the trunk COM
  double gravity = 9.81;
  double physics_dt = 0.001;
  int control_substeps = 20;
  ContactParams contact;

  double control_dt() const { return physics_dt * control_substeps; }
  void Validate() const;
};

struct UniformRange {
  double lower = 0.0;
  double upper = 0.0;
};

struct ObservationNoise {
  double gravity = 0.05;         // on sin/cos of pitch
  double joint_position = 0.01;  // rad
  double joint_velocity = 0.5;   // rad/s
};

// Friction and added mass are resampled per episode, observation noise per
// control step.
struct DomainRandomization {
  UniformRange friction{0.05, 1.5};
  UniformRange added_mass{-0.1, 3.0};
  ObservationNoise noise;

  void Validate() const;
};

struct SimState {
  double x = 0.0, z = 0.0, pitch = 0.0;
  double vx = 0.0, vz = 0.0, pitch_rate = 0.0;
  JointVector q{};
  JointVector qd{};
  std::array<double, kNumFeet> normal_force{};
  std::array<double, kNumFeet> tangential_force{};
  // Stick-spring anchor x per foot; NaN while the foot is airborne.
  std::array<double, kNumFeet> anchor_x{};
  JointVector torque{};  // torques applied during the last substep
  double energy = 0.0;   // accumulated rectified energy, J
  double time = 0.0;
  bool collision = false;
};

using Rng = std::mt19937_64;

// Draws uniformly from [lower, upper]; returns lower exactly when the range
// is degenerate.
double SampleUniform(UniformRange r, Rng& rng);

// One physics substep: PD torques toward `targets`, contact forces and a
// kick-drift-kick update of the articulated dynamics. Throws
// SimulationDivergedError when the state becomes non-finite.
SimState Step(const RobotModel& model, const EnvParams& env,
              const SimState& state, const JointVector& targets);

// Foot-point positions and velocities at a state.
struct FootKinematics {
  std::array<double, kNumFeet> x{}, z{}, vx{}, vz{};
};
FootKinematics ComputeFeet(const RobotModel& model, const SimState& state);

struct ControlStepResult {
  SimState state;
  StepSample sample;    // true state
  StepSample observed;  // same sample with observation noise applied
};

// Runs env.control_substeps physics steps holding `action` (joint position
// targets, rad). `prev_action` and the commands are copied into the sample.
ControlStepResult ControlStep(const RobotModel& model, const EnvParams& env,
                              const SimState& state, const JointVector& action,
                              const JointVector& prev_action, double cmd_vx,
                              double cmd_wz, const ObservationNoise& noise,
                              Rng& rng);

// Snapshot of a state as a StepSample (no noise).
StepSample MakeSample(const RobotModel& model, const EnvParams& env,
                      const SimState& state, const JointVector& action,
                      const JointVector& prev_action, double cmd_vx,
                      double cmd_wz);

// Nominal standing state with the feet touching the ground.
SimState StandingState(const RobotModel& model);

struct Command {
  double vx = 0.0;
  double wz = 0.0;
};

struct Episode {
  SimState state;
  EnvParams env;
  Command command;
};

// Places the robot at the nominal stance, resamples friction and added mass
// from `dr` on top of `base_env`, and draws the command from `sampler`.
template <typename CommandSampler>
Episode ResetEpisode(const RobotModel& model, const EnvParams& base_env,
                     const DomainRandomization& dr, Rng& rng,
                     CommandSampler&& sampler) {
  Episode e;
  e.state = StandingState(model);
  e.env = base_env;
  e.env.friction = SampleUniform(dr.friction, rng);
  e.env.added_mass = SampleUniform(dr.added_mass, rng);
  e.command = sampler(rng);
  return e;
}

}  // namespace gaitlab

#endif  // GAITLAB_PLANAR_SIM_H_
