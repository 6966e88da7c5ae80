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


#include "topp/model.hpp"
#include "topp/path.hpp"
#include "topp/types.hpp"

namespace topp {

// Path-projected dynamics at fixed s:  c sddot + d sdot^2 + e = B tau.
struct ReducedPathDynamics {
  double s = 0.0;
  Vec c;
  Vec d;
  Vec e;
  Mat B;

  int rows() const { return static_cast<int>(c.size()); }
  int actuators() const { return static_cast<int>(B.cols()); }
};

// Joint configuration along the path and its derivatives w.r.t. s.
struct PathKinematics {
  Vec q;
  Vec dq;   // q'(s)
  Vec ddq;  // q''(s)
};

ReducedPathDynamics Project(const RobotModel& model, const PathSpec& path,
                            double s);
PathKinematics ComputePathKinematics(const RobotModel& model,
                                     const PathSpec& path, double s);

// Source of reduced path dynamics for the phase-plane solver. Implementations
// must be pure functions of s.
class PathDynamics {
 public:
  virtual ~PathDynamics() = default;
  virtual ReducedPathDynamics At(double s) const = 0;
  virtual const TorqueLimits& limits() const = 0;
};

// A robot model driven along a task-space path.
class ProjectedPath final : public PathDynamics {
 public:
  // Both referents must outlive this object.
  ProjectedPath(const RobotModel& model, const PathSpec& path);

  ReducedPathDynamics At(double s) const override;
  const TorqueLimits& limits() const override { return model_.limits(); }

  const RobotModel& model() const { return model_; }
  const PathSpec& path() const { return path_; }

 private:
  const RobotModel& model_;
  const PathSpec& path_;
};

}  // namespace topp
