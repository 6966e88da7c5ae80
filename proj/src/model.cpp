// Copyright 2026 The topp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "topp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "topp/error.hpp"

namespace topp {
namespace {

constexpr double kSingularDet = 1e-10;
constexpr double kReachSlack = 1e-12;

Vec2 Dir(double angle) { return {std::cos(angle), std::sin(angle)}; }
Vec2 Perp(double angle) { return {-std::sin(angle), std::cos(angle)}; }

double WrapAngle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a;
}

// Rod-link arm terms from Kane's method; planar, so no gyroscopic terms.
struct ArmTerms {
  Mat3 mass;
  Vec3 velocity_terms;
  Vec3 gravity;
};

ArmTerms ComputeArmTerms(const std::array<double, 3>& lengths,
                         const std::array<double, 3>& masses, double g,
                         const Vec3& q, const Vec3& qdot) {
  std::array<double, 3> phi{}, phid{};
  double a = 0.0, ad = 0.0;
  for (int j = 0; j < 3; ++j) {
    a += q[j];
    ad += qdot[j];
    phi[j] = a;
    phid[j] = ad;
  }
  ArmTerms t;
  t.mass.setZero();
  t.velocity_terms.setZero();
  t.gravity.setZero();
  for (int k = 0; k < 3; ++k) {
    Eigen::Matrix<double, 2, 3> jv = Eigen::Matrix<double, 2, 3>::Zero();
    Vec2 centripetal = Vec2::Zero();
    for (int j = 0; j <= k; ++j) {
      const double arm = (j < k) ? lengths[j] : 0.5 * lengths[k];
      const Vec2 perp = arm * Perp(phi[j]);
      for (int col = 0; col <= j; ++col) jv.col(col) += perp;
      centripetal -= arm * phid[j] * phid[j] * Dir(phi[j]);
    }
    Vec3 jw = Vec3::Zero();
    jw.head(k + 1).setOnes();
    const double inertia = masses[k] * lengths[k] * lengths[k] / 12.0;
    t.mass += masses[k] * jv.transpose() * jv + inertia * jw * jw.transpose();
    t.velocity_terms += masses[k] * jv.transpose() * centripetal;
    t.gravity += masses[k] * jv.transpose() * Vec2(0.0, g);
  }
  return t;
}

}  // namespace

void ModelDims::Validate() const {
  if (n < 1 || p < 1 || m < 1 || r < 1 || v < 1) {
    throw Error(ErrorCode::kInvalidParameter, "all model dims must be >= 1");
  }
  if (r != n - p) {
    throw Error(ErrorCode::kInvalidParameter, "r must equal n - p");
  }
  if (m <= n - p) {
    throw Error(ErrorCode::kInvalidParameter,
                "model is not redundantly actuated (m <= n - p)");
  }
}

TorqueLimits TorqueLimits::Symmetric(const Vec& magnitude) {
  return {-magnitude, magnitude};
}

void TorqueLimits::Validate() const {
  if (tau_min.size() != tau_max.size() || tau_min.size() == 0) {
    throw Error(ErrorCode::kInvalidLimits, "tau_min/tau_max size mismatch");
  }
  for (Eigen::Index j = 0; j < tau_min.size(); ++j) {
    if (!(tau_min[j] < tau_max[j])) {
      throw Error(ErrorCode::kInvalidLimits,
                  "empty torque interval for actuator " + std::to_string(j));
    }
  }
}

TorqueLimits TorqueLimits::Scaled(double factor) const {
  return {tau_min * factor, tau_max * factor};
}

void PlanarCmmsParams::Validate() const {
  for (double v : {l0, l1, l2, l3, b0, m0, m1, m2, m3}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidParameter,
                  "planar_cmms lengths and masses must be positive");
    }
  }
  for (int b : elbow_branch) {
    if (b != 1 && b != -1) {
      throw Error(ErrorCode::kInvalidParameter, "elbow_branch must be +-1");
    }
  }
  if (!std::isfinite(gravity)) {
    throw Error(ErrorCode::kInvalidParameter, "gravity must be finite");
  }
}

TorqueLimits PlanarCmmsDefaultLimits() {
  Vec mag(6);
  mag << 35, 25, 10, 35, 25, 10;
  return TorqueLimits::Symmetric(mag);
}

struct PlanarCmms::ArmKinematics {
  Vec3 q;
  std::array<double, 2> phi;  // absolute angles of links 1 and 2
  Mat3 jacobian;              // d(wrist x, wrist y, link-3 angle)/dq
  Mat3 grasp_map;             // d(wrist x, wrist y, link-3 angle)/dpose
  Mat3 task_map;              // qdot = task_map * xdot
  Vec2 wrist_offset;          // wrist - payload centre, world frame
};

PlanarCmms::PlanarCmms(const PlanarCmmsParams& params,
                       const TorqueLimits& limits)
    : params_(params), limits_(limits), dims_{6, 3, 6, 3, 2} {
  params_.Validate();
  limits_.Validate();
  if (limits_.size() != 6) {
    throw Error(ErrorCode::kInvalidLimits, "planar_cmms needs 6 torque limits");
  }
  dims_.Validate();
}

Vec2 PlanarCmms::BasePosition(int arm) const {
  return arm == 0 ? Vec2(0.0, 0.0) : Vec2(params_.b0, 0.0);
}

Vec3 PlanarCmms::ArmPose(int arm, const Vec3& q_arm) const {
  const double phi1 = q_arm[0];
  const double phi2 = phi1 + q_arm[1];
  const double phi3 = phi2 + q_arm[2];
  const Vec2 wrist =
      BasePosition(arm) + params_.l1 * Dir(phi1) + params_.l2 * Dir(phi2);
  const double gamma = WrapAngle(arm == 0 ? phi3 : phi3 - std::numbers::pi);
  const double reach = 0.5 * params_.l0 + params_.l3;
  const Vec2 centre =
      wrist + (arm == 0 ? reach : -reach) * Dir(gamma);
  return {centre.x(), centre.y(), gamma};
}

Mat3 PlanarCmms::ArmMassMatrix(const Vec3& q_arm) const {
  return ComputeArmTerms({params_.l1, params_.l2, params_.l3},
                         {params_.m1, params_.m2, params_.m3}, params_.gravity,
                         q_arm, Vec3::Zero())
      .mass;
}

Vec PlanarCmms::InverseKinematics(const Vec& pose) const {
  if (pose.size() != 3) {
    throw Error(ErrorCode::kInvalidArgument, "pose must have 3 entries");
  }
  const double l1 = params_.l1, l2 = params_.l2;
  const double reach = 0.5 * params_.l0 + params_.l3;
  const double gamma = pose[2];
  Vec q(6);
  for (int arm = 0; arm < 2; ++arm) {
    const double side = arm == 0 ? -1.0 : 1.0;
    const Vec2 wrist = Vec2(pose[0], pose[1]) + side * reach * Dir(gamma);
    const double link3 = arm == 0 ? gamma : gamma + std::numbers::pi;
    const Vec2 d = wrist - BasePosition(arm);
    double c2 = (d.squaredNorm() - l1 * l1 - l2 * l2) / (2.0 * l1 * l2);
    if (c2 > 1.0 + kReachSlack || c2 < -1.0 - kReachSlack) {
      throw Error(ErrorCode::kUnreachablePose,
                  "wrist target of arm " + std::to_string(arm + 1) +
                      " lies outside the workspace annulus");
    }
    c2 = std::clamp(c2, -1.0, 1.0);
    // Outboard elbow: arm 1 bends clockwise at the elbow, arm 2 mirrors it.
    const double bend = (arm == 0 ? -1.0 : 1.0) * params_.elbow_branch[arm];
    const double t2 = bend * std::acos(c2);
    const double t1 = std::atan2(d.y(), d.x()) -
                      std::atan2(l2 * std::sin(t2), l1 + l2 * std::cos(t2));
    q[3 * arm + 0] = WrapAngle(t1);
    q[3 * arm + 1] = t2;
    q[3 * arm + 2] = WrapAngle(link3 - t1 - t2);
  }
  return q;
}

Vec PlanarCmms::ForwardKinematics(const Vec& q) const {
  if (q.size() != 6) {
    throw Error(ErrorCode::kInvalidArgument, "q must have 6 entries");
  }
  return ArmPose(0, q.head<3>());
}

double PlanarCmms::ClosureResidual(const Vec& q) const {
  const Vec3 a = ArmPose(0, q.head<3>());
  const Vec3 b = ArmPose(1, q.tail<3>());
  Vec3 diff = a - b;
  diff[2] = WrapAngle(diff[2]);
  return diff.norm();
}

PlanarCmms::ArmKinematics PlanarCmms::ComputeArm(int arm, const Vec3& q_arm,
                                                 const Vec3& pose) const {
  ArmKinematics k;
  k.q = q_arm;
  k.phi = {q_arm[0], q_arm[0] + q_arm[1]};
  const double l1 = params_.l1, l2 = params_.l2;
  const Vec2 p1 = l1 * Perp(k.phi[0]);
  const Vec2 p2 = l2 * Perp(k.phi[1]);
  k.jacobian << p1.x() + p2.x(), p2.x(), 0.0,
                p1.y() + p2.y(), p2.y(), 0.0,
                1.0, 1.0, 1.0;
  const double det = l1 * l2 * std::sin(q_arm[1]);
  if (std::abs(det) < kSingularDet) {
    throw Error(ErrorCode::kSingularJacobian,
                "arm " + std::to_string(arm + 1) + " is at a singularity");
  }
  const double side = arm == 0 ? -1.0 : 1.0;
  k.wrist_offset = side * (0.5 * params_.l0 + params_.l3) * Dir(pose[2]);
  k.grasp_map << 1.0, 0.0, -k.wrist_offset.y(),
                 0.0, 1.0, k.wrist_offset.x(),
                 0.0, 0.0, 1.0;
  k.task_map = k.jacobian.partialPivLu().solve(k.grasp_map);
  return k;
}

Vec PlanarCmms::JointRates(const Vec& q, const Vec& xdot) const {
  const Vec3 pose = ArmPose(0, q.head<3>());
  Vec qdot(6);
  for (int arm = 0; arm < 2; ++arm) {
    const ArmKinematics k = ComputeArm(arm, q.segment<3>(3 * arm), pose);
    qdot.segment<3>(3 * arm) = k.task_map * xdot;
  }
  return qdot;
}

namespace {

// Joint accelerations produced by the velocity state alone (xddot = 0).
Vec3 VelocityProductAcceleration(const Mat3& jacobian,
                                 const std::array<double, 2>& phi,
                                 double l1, double l2, const Vec2& wrist_offset,
                                 const Vec3& qdot, const Vec3& xdot) {
  const double w1 = qdot[0];
  const double w2 = qdot[0] + qdot[1];
  Vec3 rhs;
  const Vec2 wrist_pose_term = -wrist_offset * xdot[2] * xdot[2];
  const Vec2 chain_term = -l1 * w1 * w1 * Dir(phi[0]) - l2 * w2 * w2 * Dir(phi[1]);
  rhs.head<2>() = wrist_pose_term - chain_term;
  rhs[2] = 0.0;
  return jacobian.partialPivLu().solve(rhs);
}

}  // namespace

Vec PlanarCmms::JointAccelerations(const Vec& q, const Vec& xdot,
                                   const Vec& xddot) const {
  const Vec3 pose = ArmPose(0, q.head<3>());
  Vec qddot(6);
  for (int arm = 0; arm < 2; ++arm) {
    const ArmKinematics k = ComputeArm(arm, q.segment<3>(3 * arm), pose);
    const Vec3 qdot = k.task_map * xdot;
    qddot.segment<3>(3 * arm) =
        k.task_map * xddot +
        VelocityProductAcceleration(k.jacobian, k.phi, params_.l1, params_.l2,
                                    k.wrist_offset, qdot, xdot);
  }
  return qddot;
}

TaskDynamics PlanarCmms::ComputeTaskDynamics(const Vec& q,
                                             const Vec& xdot) const {
  const Vec3 pose = ArmPose(0, q.head<3>());
  const std::array<double, 3> lengths{params_.l1, params_.l2, params_.l3};
  const std::array<double, 3> masses{params_.m1, params_.m2, params_.m3};
  const double payload_inertia = params_.m0 * params_.l0 * params_.l0 / 12.0;

  TaskDynamics td;
  td.mass = Vec3(params_.m0, params_.m0, payload_inertia).asDiagonal();
  td.velocity_terms = Vec3::Zero();
  td.gravity = Vec3(0.0, params_.m0 * params_.gravity, 0.0);
  td.actuation.resize(3, 6);
  for (int arm = 0; arm < 2; ++arm) {
    const ArmKinematics k = ComputeArm(arm, q.segment<3>(3 * arm), pose);
    const Vec3 qdot = k.task_map * xdot;
    const ArmTerms terms =
        ComputeArmTerms(lengths, masses, params_.gravity, k.q, qdot);
    const Vec3 qddot0 =
        VelocityProductAcceleration(k.jacobian, k.phi, params_.l1, params_.l2,
                                    k.wrist_offset, qdot, xdot);
    const Mat3 ht = k.task_map.transpose();
    td.mass += ht * terms.mass * k.task_map;
    td.velocity_terms += ht * (terms.mass * qddot0 + terms.velocity_terms);
    td.gravity += ht * terms.gravity;
    td.actuation.block<3, 3>(0, 3 * arm) = ht;
  }
  return td;
}

ReducedDynamics PlanarCmms::ComputeReducedDynamics(const Vec& q,
                                                   const Vec& qdot) const {
  const Vec3 pose = ArmPose(0, q.head<3>());
  const std::array<double, 3> lengths{params_.l1, params_.l2, params_.l3};
  const std::array<double, 3> masses{params_.m1, params_.m2, params_.m3};
  const double payload_inertia = params_.m0 * params_.l0 * params_.l0 / 12.0;
  const Mat3 payload_mass =
      Vec3(params_.m0, params_.m0, payload_inertia).asDiagonal();

  ReducedDynamics rd;
  rd.M.setZero(3, 6);
  rd.h = Vec3::Zero();
  rd.g = Vec3(0.0, params_.m0 * params_.gravity, 0.0);
  rd.B.resize(3, 6);

  const ArmKinematics k0 = ComputeArm(0, q.head<3>(), pose);
  // Arm 1 carries the payload inertia: xddot = task_map^-1 (qddot0 - bias).
  const Mat3 task_from_arm0 = k0.task_map.inverse();
  const Vec xdot = task_from_arm0 * qdot.head<3>();
  for (int arm = 0; arm < 2; ++arm) {
    const ArmKinematics k =
        arm == 0 ? k0 : ComputeArm(arm, q.segment<3>(3 * arm), pose);
    const Vec3 qd = qdot.segment<3>(3 * arm);
    const ArmTerms terms =
        ComputeArmTerms(lengths, masses, params_.gravity, k.q, qd);
    const Mat3 ht = k.task_map.transpose();
    rd.M.block<3, 3>(0, 3 * arm) = ht * terms.mass;
    rd.h += ht * terms.velocity_terms;
    rd.g += ht * terms.gravity;
    rd.B.block<3, 3>(0, 3 * arm) = ht;
    if (arm == 0) {
      rd.M.block<3, 3>(0, 0) += payload_mass * task_from_arm0;
      rd.h -= payload_mass * task_from_arm0 *
              VelocityProductAcceleration(k.jacobian, k.phi, params_.l1,
                                          params_.l2, k.wrist_offset, qd, xdot);
    }
  }
  return rd;
}

std::unique_ptr<RobotModel> PlanarCmms::WithLimits(
    const TorqueLimits& limits) const {
  return std::make_unique<PlanarCmms>(params_, limits);
}

std::unique_ptr<RobotModel> MakePlanarCmms(const PlanarCmmsParams& params,
                                           const TorqueLimits& limits) {
  return std::make_unique<PlanarCmms>(params, limits);
}

}  // namespace topp
