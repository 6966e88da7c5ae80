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

#pragma once

#include <array>
#include <memory>
#include <string>

#include "topp/types.hpp"

namespace topp {

struct ModelDims {
  int n = 0;  // generalized coordinates
  int p = 0;  // holonomic constraints
  int m = 0;  // actuators
  int r = 0;  // task-space coordinates
  int v = 0;  // arms

  int reduced() const { return n - p; }
  // Throws kInvalidParameter unless r == n - p, m > n - p and all dims >= 1.
  void Validate() const;
};

struct TorqueLimits {
  Vec tau_min;
  Vec tau_max;

  static TorqueLimits Symmetric(const Vec& magnitude);
  int size() const { return static_cast<int>(tau_min.size()); }
  // Throws kInvalidLimits on size mismatch or an empty interval.
  void Validate() const;
  TorqueLimits Scaled(double factor) const;
};

struct JointState {
  Vec q;
  Vec qdot;
};

// Equations of motion reduced onto the task coordinates x:
//   mass * xddot + velocity_terms + gravity = actuation * tau
struct TaskDynamics {
  Mat mass;            // r x r, symmetric positive definite
  Vec velocity_terms;  // r, quadratic in xdot
  Vec gravity;         // r
  Mat actuation;       // r x m
};

// Joint-space reduced form  M qddot + h + g = B tau,  valid for closure
// consistent (q, qdot, qddot).
struct ReducedDynamics {
  Mat M;  // (n-p) x n
  Vec h;  // n-p
  Vec g;  // n-p
  Mat B;  // (n-p) x m
};

// Closed-chain robot reduced onto its task coordinates. Implementations are
// immutable after construction and safe to share across threads.
class RobotModel {
 public:
  virtual ~RobotModel() = default;

  virtual const ModelDims& dims() const = 0;
  virtual const TorqueLimits& limits() const = 0;
  virtual std::string name() const = 0;

  virtual Vec InverseKinematics(const Vec& pose) const = 0;
  virtual Vec ForwardKinematics(const Vec& q) const = 0;
  // Pose disagreement between the arms' chains; zero on the constraint
  // manifold.
  virtual double ClosureResidual(const Vec& q) const = 0;
  // Joint rates producing the task velocity xdot at configuration q.
  virtual Vec JointRates(const Vec& q, const Vec& xdot) const = 0;
  // Joint accelerations for task acceleration xddot at (q, xdot).
  virtual Vec JointAccelerations(const Vec& q, const Vec& xdot,
                                 const Vec& xddot) const = 0;

  virtual TaskDynamics ComputeTaskDynamics(const Vec& q,
                                           const Vec& xdot) const = 0;
  virtual ReducedDynamics ComputeReducedDynamics(const Vec& q,
                                                 const Vec& qdot) const = 0;

  // Copy of this model with different torque limits.
  virtual std::unique_ptr<RobotModel> WithLimits(
      const TorqueLimits& limits) const = 0;
};

// Two planar 3-DOF arms rigidly grasping a rod-shaped payload. Arm 1 is
// based at the origin, arm 2 at (b0, 0). Link 3 of each arm is collinear
// with the payload. Every body is a uniform slender rod; gravity acts
// along -y.
struct PlanarCmmsParams {
  double l0 = 0.2;  // payload length
  double l1 = 0.5;
  double l2 = 0.6;
  double l3 = 0.3;
  double b0 = 1.4;  // base separation
  double m0 = 1.0;  // payload mass
  double m1 = 1.0;
  double m2 = 1.0;
  double m3 = 0.3;
  // +1 places the elbow outboard (away from the other arm), -1 inboard.
  std::array<int, 2> elbow_branch{1, 1};
  double gravity = 9.81;

  void Validate() const;
};

// Default torque limits: +-[35, 25, 10] N m per arm.
TorqueLimits PlanarCmmsDefaultLimits();

class PlanarCmms final : public RobotModel {
 public:
  PlanarCmms(const PlanarCmmsParams& params, const TorqueLimits& limits);

  const ModelDims& dims() const override { return dims_; }
  const TorqueLimits& limits() const override { return limits_; }
  std::string name() const override { return "planar_cmms"; }
  const PlanarCmmsParams& params() const { return params_; }

  Vec InverseKinematics(const Vec& pose) const override;
  Vec ForwardKinematics(const Vec& q) const override;
  double ClosureResidual(const Vec& q) const override;
  Vec JointRates(const Vec& q, const Vec& xdot) const override;
  Vec JointAccelerations(const Vec& q, const Vec& xdot,
                         const Vec& xddot) const override;
  TaskDynamics ComputeTaskDynamics(const Vec& q,
                                   const Vec& xdot) const override;
  ReducedDynamics ComputeReducedDynamics(const Vec& q,
                                         const Vec& qdot) const override;
  std::unique_ptr<RobotModel> WithLimits(
      const TorqueLimits& limits) const override;

  // Payload pose implied by one arm's chain.
  Vec3 ArmPose(int arm, const Vec3& q_arm) const;
  // Joint-space mass matrix of one arm.
  Mat3 ArmMassMatrix(const Vec3& q_arm) const;
  Vec2 BasePosition(int arm) const;

 private:
  struct ArmKinematics;
  ArmKinematics ComputeArm(int arm, const Vec3& q_arm, const Vec3& pose) const;

  PlanarCmmsParams params_;
  TorqueLimits limits_;
  ModelDims dims_;
};

std::unique_ptr<RobotModel> MakePlanarCmms(const PlanarCmmsParams& params,
                                           const TorqueLimits& limits);

}  // namespace topp
