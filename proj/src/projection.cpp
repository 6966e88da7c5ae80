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

#include "topp/projection.hpp"

#include <algorithm>

#include "topp/error.hpp"

namespace topp {

ReducedPathDynamics Project(const RobotModel& model, const PathSpec& path,
                            double s) {
  if (path.size() != model.dims().r) {
    throw Error(ErrorCode::kInvalidArgument,
                "path coordinate count does not match the model");
  }
  const PathPoint pt = EvaluatePath(path, s);
  const Vec q = model.InverseKinematics(pt.f);
  // Velocity terms are quadratic in xdot, so evaluating them at xdot = f'
  // gives the coefficient of sdot^2.
  const TaskDynamics td = model.ComputeTaskDynamics(q, pt.df);
  ReducedPathDynamics rd;
  rd.s = s;
  rd.c = td.mass * pt.df;
  rd.d = td.mass * pt.ddf + td.velocity_terms;
  rd.e = td.gravity;
  rd.B = td.actuation;
  return rd;
}

PathKinematics ComputePathKinematics(const RobotModel& model,
                                     const PathSpec& path, double s) {
  const PathPoint pt = EvaluatePath(path, s);
  PathKinematics k;
  k.q = model.InverseKinematics(pt.f);
  k.dq = model.JointRates(k.q, pt.df);
  k.ddq = model.JointAccelerations(k.q, pt.df, pt.ddf);
  return k;
}

ProjectedPath::ProjectedPath(const RobotModel& model, const PathSpec& path)
    : model_(model), path_(path) {
  if (path.size() != model.dims().r) {
    throw Error(ErrorCode::kInvalidArgument,
                "path coordinate count does not match the model");
  }
}

ReducedPathDynamics ProjectedPath::At(double s) const {
  return Project(model_, path_, std::clamp(s, 0.0, 1.0));
}

}  // namespace topp
