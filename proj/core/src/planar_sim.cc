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

#include "gaitlab/planar_sim.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "gaitlab/errors.h"

namespace gaitlab {
namespace {

constexpr int kDofs = 3 + kNumJoints;  // x, z, pitch, joints
using Vec = Eigen::Matrix<double, kDofs, 1>;
using Mat = Eigen::Matrix<double, kDofs, kDofs>;
using Vec2 = Eigen::Vector2d;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kDivergenceBound = 1e4;

// Rotates a planar vector by +90 degrees: omega x r for a scalar omega.
Vec2 Perp(const Vec2& r) { return {-r.y(), r.x()}; }

Vec2 LinkDir(double phi) { return {std::sin(phi), -std::cos(phi)}; }

struct LegFrame {
  Vec2 hip, knee, foot, thigh_com, shank_com;
  Vec2 foot_vel;
  Vec2 thigh_bias, shank_bias, foot_bias;  // accelerations at zero qdd
};

// Generalized state packed for the dynamics.
struct Packed {
  Vec pos;
  Vec vel;
};

Packed Pack(const SimState& s) {
  Packed p;
  p.pos << s.x, s.z, s.pitch, s.q[0], s.q[1], s.q[2], s.q[3], s.q[4], s.q[5],
      s.q[6], s.q[7];
  p.vel << s.vx, s.vz, s.pitch_rate, s.qd[0], s.qd[1], s.qd[2], s.qd[3],
      s.qd[4], s.qd[5], s.qd[6], s.qd[7];
  return p;
}

void Unpack(const Packed& p, SimState& s) {
  s.x = p.pos[0];
  s.z = p.pos[1];
  s.pitch = p.pos[2];
  s.vx = p.vel[0];
  s.vz = p.vel[1];
  s.pitch_rate = p.vel[2];
  for (int j = 0; j < kNumJoints; ++j) {
    s.q[j] = p.pos[3 + j];
    s.qd[j] = p.vel[3 + j];
  }
}

LegFrame ComputeLeg(const RobotModel& m, const Packed& p, int foot) {
  const int j1 = 3 + 2 * foot;
  const int j2 = j1 + 1;
  const Vec2 base(p.pos[0], p.pos[1]);
  const Vec2 base_vel(p.vel[0], p.vel[1]);
  const double pitch = p.pos[2];
  const double hx = m.HipX(foot);
  const double phi1 = pitch + p.pos[j1];
  const double phi2 = phi1 + p.pos[j2];
  const double w0 = p.vel[2];
  const double w1 = w0 + p.vel[j1];
  const double w2 = w1 + p.vel[j2];
  const Vec2 u1 = LinkDir(phi1);
  const Vec2 u2 = LinkDir(phi2);

  LegFrame f;
  const Vec2 hip_rel(std::cos(pitch) * hx, std::sin(pitch) * hx);
  f.hip = base + hip_rel;
  f.knee = f.hip + m.thigh.length * u1;
  f.foot = f.knee + m.shank.length * u2;
  f.thigh_com = f.hip + m.thigh.com_fraction * m.thigh.length * u1;
  f.shank_com = f.knee + m.shank.com_fraction * m.shank.length * u2;

  const Vec2 hip_vel = base_vel + w0 * Perp(hip_rel);
  const Vec2 knee_vel = hip_vel + w1 * Perp(f.knee - f.hip);
  f.foot_vel = knee_vel + w2 * Perp(f.foot - f.knee);

  const Vec2 hip_bias = -w0 * w0 * hip_rel;
  const Vec2 knee_bias = hip_bias - w1 * w1 * (f.knee - f.hip);
  f.thigh_bias = hip_bias - w1 * w1 * (f.thigh_com - f.hip);
  f.shank_bias = knee_bias - w2 * w2 * (f.shank_com - f.knee);
  f.foot_bias = knee_bias - w2 * w2 * (f.foot - f.knee);
  return f;
}

// Jacobian of a point on leg `foot` restricted to the five columns
// {x, z, pitch, hip, knee}. The knee column is zero for thigh points.
using LegJacobian = Eigen::Matrix<double, 2, 5>;

LegJacobian PointJacobian(const Vec2& point, const Vec2& base,
                          const LegFrame& f, bool on_shank) {
  LegJacobian J;
  J.col(0) << 1.0, 0.0;
  J.col(1) << 0.0, 1.0;
  J.col(2) = Perp(point - base);
  J.col(3) = Perp(point - f.hip);
  J.col(4) = on_shank ? Perp(point - f.knee) : Vec2::Zero();
  return J;
}

std::array<int, 5> LegColumns(int foot) {
  return {0, 1, 2, 3 + 2 * foot, 4 + 2 * foot};
}

struct ContactResult {
  double normal = 0.0;
  double tangential = 0.0;
  double anchor = kNaN;
};

ContactResult FootContact(const EnvParams& env, double foot_radius,
                          const Vec2& pos, const Vec2& vel, double anchor) {
  ContactResult c;
  const double penetration = foot_radius - pos.y();
  if (penetration <= 0.0) return c;
  const ContactParams& cp = env.contact;
  c.normal = std::max(0.0, cp.stiffness * penetration - cp.damping * vel.y());
  c.anchor = std::isnan(anchor) ? pos.x() : anchor;
  const double limit = env.friction * c.normal;
  const double trial = -cp.tangential_stiffness * (pos.x() - c.anchor) -
                       cp.tangential_damping * vel.x();
  if (std::abs(trial) > limit) {
    c.tangential = std::copysign(limit, trial);
    // Slide the anchor so the stick spring is consistent with the cap.
    c.anchor = pos.x() +
               (c.tangential + cp.tangential_damping * vel.x()) /
                   cp.tangential_stiffness;
  } else {
    c.tangential = trial;
  }
  return c;
}

struct Evaluation {
  Vec acc;
  JointVector torque{};
  std::array<ContactResult, kNumFeet> contact;
};

JointVector PdTorques(const RobotModel& m, const Packed& p,
                      const JointVector& targets) {
  JointVector tau;
  for (int j = 0; j < kNumJoints; ++j) {
    const double q = p.pos[3 + j];
    const double qd = p.vel[3 + j];
    double t = m.kp * (targets[j] - q) - m.kd * qd;
    t = std::clamp(t, -m.torque_limit, m.torque_limit);
    if (std::abs(qd) >= m.velocity_limit && t * qd > 0) t = 0.0;
    tau[j] = t;
  }
  return tau;
}

Evaluation Evaluate(const RobotModel& m, const EnvParams& env, const Packed& p,
                    const JointVector& targets,
                    const std::array<double, kNumFeet>& anchors) {
  const double g = env.gravity;
  const double trunk_mass = m.trunk_mass + env.added_mass;
  const Vec2 base(p.pos[0], p.pos[1]);
  const Vec2 gravity(0.0, -g);

  Mat M = Mat::Zero();
  Vec F = Vec::Zero();
  M(0, 0) = trunk_mass;
  M(1, 1) = trunk_mass;
  M(2, 2) = m.trunk_inertia;
  F[1] = -trunk_mass * g;

  Evaluation e;
  e.torque = PdTorques(m, p, targets);
  for (int j = 0; j < kNumJoints; ++j) {
    M(3 + j, 3 + j) += m.joint_armature;
    F[3 + j] += e.torque[j];
  }

  for (int foot = 0; foot < kNumFeet; ++foot) {
    const LegFrame f = ComputeLeg(m, p, foot);
    const auto cols = LegColumns(foot);

    const LegJacobian Jt = PointJacobian(f.thigh_com, base, f, false);
    const LegJacobian Js = PointJacobian(f.shank_com, base, f, true);
    const LegJacobian Jf = PointJacobian(f.foot, base, f, true);

    Eigen::Matrix<double, 5, 5> block =
        m.thigh.mass * Jt.transpose() * Jt + m.shank.mass * Js.transpose() * Js;
    // Rotational terms: link angular rates are sums of pitch and joint rates.
    const Eigen::Matrix<double, 1, 5> wt(0, 0, 1, 1, 0);
    const Eigen::Matrix<double, 1, 5> ws(0, 0, 1, 1, 1);
    block += m.thigh.inertia * wt.transpose() * wt +
             m.shank.inertia * ws.transpose() * ws;

    Eigen::Matrix<double, 5, 1> gen =
        Jt.transpose() * (m.thigh.mass * (gravity - f.thigh_bias)) +
        Js.transpose() * (m.shank.mass * (gravity - f.shank_bias));

    const ContactResult c =
        FootContact(env, m.foot_radius, f.foot, f.foot_vel, anchors[foot]);
    e.contact[foot] = c;
    gen += Jf.transpose() * Vec2(c.tangential, c.normal);

    for (int a = 0; a < 5; ++a) {
      F[cols[a]] += gen[a];
      for (int b = 0; b < 5; ++b) M(cols[a], cols[b]) += block(a, b);
    }
  }

  e.acc = M.llt().solve(F);
  return e;
}

bool Collides(const RobotModel& m, const Packed& p) {
  const double c = std::cos(p.pos[2]);
  const double s = std::sin(p.pos[2]);
  const double half = 0.5 * m.trunk_length;
  const double below = -0.5 * m.trunk_thickness;
  for (double bx : {half, -half}) {
    const double z = p.pos[1] + s * bx + c * below;
    if (z < m.foot_radius) return true;
  }
  for (int foot = 0; foot < kNumFeet; ++foot) {
    const LegFrame f = ComputeLeg(m, p, foot);
    if (f.knee.y() < m.foot_radius || f.hip.y() < m.foot_radius) return true;
  }
  return false;
}

void RequireFinite(const SimState& s) {
  auto bad = [](double v) {
    return !std::isfinite(v) || std::abs(v) > kDivergenceBound;
  };
  bool diverged = bad(s.x) || bad(s.z) || bad(s.pitch) || bad(s.vx) ||
                  bad(s.vz) || bad(s.pitch_rate);
  for (int j = 0; j < kNumJoints; ++j) diverged |= bad(s.q[j]) || bad(s.qd[j]);
  if (diverged) {
    throw SimulationDivergedError("non-finite simulator state at t=" +
                                  std::to_string(s.time));
  }
}

void Positive(double v, const char* field) {
  if (!(v > 0) || !std::isfinite(v)) {
    throw ConfigError(field, "must be positive and finite");
  }
}

}  // namespace

void RobotModel::Validate() const {
  Positive(trunk_mass, "robot.trunk_mass");
  Positive(trunk_inertia, "robot.trunk_inertia");
  Positive(trunk_length, "robot.trunk_length");
  Positive(trunk_thickness, "robot.trunk_thickness");
  Positive(thigh.mass, "robot.thigh.mass");
  Positive(thigh.length, "robot.thigh.length");
  Positive(thigh.inertia, "robot.thigh.inertia");
  Positive(shank.mass, "robot.shank.mass");
  Positive(shank.length, "robot.shank.length");
  Positive(shank.inertia, "robot.shank.inertia");
  Positive(torque_limit, "robot.torque_limit");
  Positive(velocity_limit, "robot.velocity_limit");
  Positive(foot_radius, "robot.foot_radius");
  if (!(joint_armature >= 0)) {
    throw ConfigError("robot.joint_armature", "must be >= 0");
  }
  if (!(kp >= 0)) throw ConfigError("robot.kp", "must be >= 0");
  if (!(kd >= 0)) throw ConfigError("robot.kd", "must be >= 0");
  if (!(hip_range.lower < hip_range.upper)) {
    throw ConfigError("robot.hip_range", "lower must be < upper");
  }
  if (!(knee_range.lower < knee_range.upper)) {
    throw ConfigError("robot.knee_range", "lower must be < upper");
  }
  for (double f : {thigh.com_fraction, shank.com_fraction}) {
    if (!(f >= 0 && f <= 1)) {
      throw ConfigError("robot.com_fraction", "must be in [0, 1]");
    }
  }
  if (nominal_hip < hip_range.lower || nominal_hip > hip_range.upper) {
    throw ConfigError("robot.nominal_hip", "outside hip_range");
  }
  if (nominal_knee < knee_range.lower || nominal_knee > knee_range.upper) {
    throw ConfigError("robot.nominal_knee", "outside knee_range");
  }
}

JointVector RobotModel::NominalPose() const {
  JointVector q;
  for (int foot = 0; foot < kNumFeet; ++foot) {
    q[2 * foot] = nominal_hip;
    q[2 * foot + 1] = nominal_knee;
  }
  return q;
}

double RobotModel::NominalStandHeight() const {
  return thigh.length * std::cos(nominal_hip) +
         shank.length * std::cos(nominal_hip + nominal_knee) + foot_radius;
}

void ContactParams::Validate() const {
  Positive(stiffness, "sim.contact.stiffness");
  Positive(tangential_stiffness, "sim.contact.tangential_stiffness");
  if (!(damping >= 0)) throw ConfigError("sim.contact.damping", "must be >= 0");
  if (!(tangential_damping >= 0)) {
    throw ConfigError("sim.contact.tangential_damping", "must be >= 0");
  }
  if (!(stance_threshold >= 0)) {
    throw ConfigError("sim.contact.stance_threshold", "must be >= 0");
  }
}

void EnvParams::Validate() const {
  if (!(friction >= 0)) throw ConfigError("sim.friction", "must be >= 0");
  if (!std::isfinite(added_mass)) {
    throw ConfigError("sim.added_mass", "must be finite");
  }
  if (!(gravity >= 0)) throw ConfigError("sim.gravity", "must be >= 0");
  Positive(physics_dt, "sim.physics_dt");
  if (control_substeps < 1) {
    throw ConfigError("sim.control_substeps", "must be >= 1");
  }
  contact.Validate();
}

void DomainRandomization::Validate() const {
  if (!(friction.lower <= friction.upper) || friction.lower < 0) {
    throw ConfigError("domain_randomization.friction",
                      "need 0 <= lower <= upper");
  }
  if (!(added_mass.lower <= added_mass.upper)) {
    throw ConfigError("domain_randomization.added_mass", "need lower <= upper");
  }
  if (!(noise.gravity >= 0) || !(noise.joint_position >= 0) ||
      !(noise.joint_velocity >= 0)) {
    throw ConfigError("domain_randomization.noise",
                      "amplitudes must be >= 0");
  }
}

double SampleUniform(UniformRange r, Rng& rng) {
  // Always consume one draw so the stream does not depend on the range.
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (r.lower == r.upper) return r.lower;
  return std::min(r.upper, r.lower + u * (r.upper - r.lower));
}

FootKinematics ComputeFeet(const RobotModel& model, const SimState& state) {
  const Packed p = Pack(state);
  FootKinematics k;
  for (int foot = 0; foot < kNumFeet; ++foot) {
    const LegFrame f = ComputeLeg(model, p, foot);
    k.x[foot] = f.foot.x();
    k.z[foot] = f.foot.y();
    k.vx[foot] = f.foot_vel.x();
    k.vz[foot] = f.foot_vel.y();
  }
  return k;
}

SimState Step(const RobotModel& model, const EnvParams& env,
              const SimState& state, const JointVector& targets) {
  const double dt = env.physics_dt;
  Packed p = Pack(state);

  // Kick-drift-kick: exact for constant accelerations, symplectic for the
  // conservative part.
  const Evaluation first = Evaluate(model, env, p, targets, state.anchor_x);
  double power = 0.0;
  for (int j = 0; j < kNumJoints; ++j) {
    power += std::abs(first.torque[j]) * std::abs(p.vel[3 + j]);
  }
  p.vel += 0.5 * dt * first.acc;
  p.pos += dt * p.vel;

  std::array<double, kNumFeet> anchors;
  for (int foot = 0; foot < kNumFeet; ++foot) {
    anchors[foot] = first.contact[foot].anchor;
  }
  const Evaluation second = Evaluate(model, env, p, targets, anchors);
  p.vel += 0.5 * dt * second.acc;

  SimState next = state;
  // Joint stops: clamp and kill the velocity component pushing outward.
  for (int j = 0; j < kNumJoints; ++j) {
    const JointRange r = model.Range(j);
    double& q = p.pos[3 + j];
    double& qd = p.vel[3 + j];
    if (q < r.lower) {
      q = r.lower;
      if (qd < 0) qd = 0;
    } else if (q > r.upper) {
      q = r.upper;
      if (qd > 0) qd = 0;
    }
  }
  Unpack(p, next);
  for (int foot = 0; foot < kNumFeet; ++foot) {
    next.normal_force[foot] = second.contact[foot].normal;
    next.tangential_force[foot] = second.contact[foot].tangential;
    next.anchor_x[foot] = second.contact[foot].anchor;
  }
  next.torque = second.torque;
  next.energy = state.energy + power * dt;
  next.time = state.time + dt;
  next.collision = Collides(model, p);
  RequireFinite(next);
  return next;
}

StepSample MakeSample(const RobotModel& model, const EnvParams& env,
                      const SimState& state, const JointVector& action,
                      const JointVector& prev_action, double cmd_vx,
                      double cmd_wz) {
  (void)model;
  StepSample s;
  s.t = state.time;
  s.cmd_vx = cmd_vx;
  s.cmd_wz = cmd_wz;
  s.vx = state.vx;
  s.joint_torques.assign(state.torque.begin(), state.torque.end());
  s.joint_velocities.assign(state.qd.begin(), state.qd.end());
  s.joint_positions.assign(state.q.begin(), state.q.end());
  s.prev_action.assign(prev_action.begin(), prev_action.end());
  s.action.assign(action.begin(), action.end());
  for (int foot = 0; foot < kNumFeet; ++foot) {
    s.foot_contact[foot] =
        state.normal_force[foot] > env.contact.stance_threshold;
  }
  s.trunk_pitch = state.pitch;
  s.trunk_height = state.z;
  s.collision_flag = state.collision;
  s.base_x = state.x;
  s.base_y = 0.0;
  return s;
}

ControlStepResult ControlStep(const RobotModel& model, const EnvParams& env,
                              const SimState& state, const JointVector& action,
                              const JointVector& prev_action, double cmd_vx,
                              double cmd_wz, const ObservationNoise& noise,
                              Rng& rng) {
  ControlStepResult r;
  r.state = state;
  bool collided = false;
  for (int i = 0; i < env.control_substeps; ++i) {
    r.state = Step(model, env, r.state, action);
    collided |= r.state.collision;
  }
  r.state.collision = collided;
  r.sample = MakeSample(model, env, r.state, action, prev_action, cmd_vx, cmd_wz);

  r.observed = r.sample;
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  r.observed.trunk_pitch += noise.gravity * unit(rng);
  for (int j = 0; j < kNumJoints; ++j) {
    r.observed.joint_positions[j] += noise.joint_position * unit(rng);
    r.observed.joint_velocities[j] += noise.joint_velocity * unit(rng);
  }
  return r;
}

SimState StandingState(const RobotModel& model) {
  SimState s;
  s.z = model.NominalStandHeight();
  s.q = model.NominalPose();
  s.anchor_x.fill(kNaN);
  return s;
}

}  // namespace gaitlab
