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

#include <cmath>

#include "doctest.h"
#include "test_util.hpp"
#include "topp/error.hpp"
#include "topp/path.hpp"
#include "topp/projection.hpp"

using namespace topp;
using topp::testing::Rng;
using topp::testing::DefaultModel;
using topp::testing::Uniform;

TEST_CASE("quintic lift evaluated at the midpoint") {
  const PathPoint pt = EvaluatePath(Example1Path(), 0.5);
  CHECK(pt.f[0] == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(pt.f[1] == doctest::Approx(0.701875).epsilon(1e-14));
  CHECK(std::abs(pt.f[2]) < 1e-15);
}

TEST_CASE("circle path at the start") {
  const PathPoint pt = EvaluatePath(Example1CirclePath(), 0.0);
  CHECK(pt.f[0] == doctest::Approx(0.9));
  CHECK(pt.f[1] == doctest::Approx(0.62));
  CHECK(pt.f[2] == 0.0);
}

TEST_CASE("constant path has zero derivatives") {
  PathSpec p;
  p.coords = {{PolyTerm{0.3, 0}}};
  const PathPoint pt = EvaluatePath(p, 0.4);
  CHECK(pt.f[0] == 0.3);
  CHECK(pt.df[0] == 0.0);
  CHECK(pt.ddf[0] == 0.0);
}

TEST_CASE("path domain is checked") {
  CHECK_NOTHROW(EvaluatePath(Example1Path(), 1.0 + 5e-7));
  CHECK_THROWS_AS(EvaluatePath(Example1Path(), 1.1), Error);
  CHECK_THROWS_AS(BuiltinPath("nope"), Error);
}

TEST_CASE("analytic derivatives match finite differences") {
  auto rng = Rng(5);
  const double h = 1e-5;
  for (const PathSpec& path : {Example1Path(), Example1CirclePath()}) {
    for (int i = 0; i < 1000; ++i) {
      const double s = Uniform(rng, h, 1.0 - h);
      const PathPoint c = EvaluatePath(path, s);
      const PathPoint a = EvaluatePath(path, s + h);
      const PathPoint b = EvaluatePath(path, s - h);
      REQUIRE(((a.f - b.f) / (2 * h) - c.df).norm() < 1e-6);
      REQUIRE(((a.df - b.df) / (2 * h) - c.ddf).norm() < 1e-6 * 10);
    }
  }
}

TEST_CASE("projected equation reproduces the joint-space balance") {
  const auto model = DefaultModel();
  const PathSpec path = Example1Path();
  auto rng = Rng(9);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double s = Uniform(rng, 0.0, 1.0);
    const double sdot = Uniform(rng, 0.0, 6.0);
    const double sddot = Uniform(rng, -40.0, 40.0);
    const ReducedPathDynamics rd = Project(*model, path, s);
    const Vec rhs = rd.c * sddot + rd.d * sdot * sdot + rd.e;
    // Least-squares torque plus an arbitrary null-space component.
    const Eigen::CompleteOrthogonalDecomposition<Mat> cod(rd.B);
    Vec tau = cod.solve(rhs);
    const Eigen::FullPivLU<Mat> lu(rd.B);
    const Mat kernel = lu.kernel();
    for (int k = 0; k < kernel.cols(); ++k) {
      tau += Uniform(rng, -3.0, 3.0) * kernel.col(k);
    }
    const PathPoint pt = EvaluatePath(path, s);
    const Vec q = model->InverseKinematics(pt.f);
    const Vec xdot = pt.df * sdot;
    const Vec xddot = pt.df * sddot + pt.ddf * sdot * sdot;
    const Vec qdot = model->JointRates(q, xdot);
    const Vec qddot = model->JointAccelerations(q, xdot, xddot);
    const ReducedDynamics full = model->ComputeReducedDynamics(q, qdot);
    const Vec residual = full.M * qddot + full.h + full.g - full.B * tau;
    worst = std::max(worst, residual.norm());
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("at rest the required torque balances the static load") {
  const auto model = DefaultModel();
  const PathSpec path = Example1Path();
  const ReducedPathDynamics rd = Project(*model, path, 0.3);
  const Vec q = model->InverseKinematics(EvaluatePath(path, 0.3).f);
  const ReducedDynamics full = model->ComputeReducedDynamics(q, Vec::Zero(6));
  CHECK((rd.e - full.g).norm() < 1e-12);
}

TEST_CASE("straight constant-orientation path without gravity") {
  PlanarCmmsParams p;
  p.gravity = 0.0;
  const PlanarCmms model(p, PlanarCmmsDefaultLimits());
  PathSpec line;
  line.coords = {{PolyTerm{0.2, 1}, PolyTerm{0.6, 0}},
                 {PolyTerm{0.1, 1}, PolyTerm{0.7, 0}},
                 {PolyTerm{0.05, 0}}};
  const ReducedPathDynamics rd = Project(model, line, 0.4);
  CHECK(rd.e.norm() == 0.0);
  const PathPoint pt = EvaluatePath(line, 0.4);
  const Vec q = model.InverseKinematics(pt.f);
  const TaskDynamics td = model.ComputeTaskDynamics(q, pt.df);
  CHECK((rd.d - td.velocity_terms).norm() < 1e-14);
}

TEST_CASE("projection is deterministic and full rank") {
  const auto model = DefaultModel();
  const PathSpec path = Example1Path();
  const ProjectedPath projected(*model, path);
  for (int i = 0; i <= 200; ++i) {
    const double s = i / 200.0;
    const ReducedPathDynamics a = projected.At(s);
    const ReducedPathDynamics b = Project(*model, path, s);
    REQUIRE(a.c == b.c);
    REQUIRE(a.d == b.d);
    REQUIRE(a.e == b.e);
    REQUIRE(a.B == b.B);
    REQUIRE(Eigen::FullPivLU<Mat>(a.B).rank() == 3);
  }
}

TEST_CASE("path kinematics chain rule") {
  const auto model = DefaultModel();
  const PathSpec path = Example1Path();
  const double s = 0.37, h = 1e-5;
  const PathKinematics k = ComputePathKinematics(*model, path, s);
  const PathKinematics a = ComputePathKinematics(*model, path, s + h);
  const PathKinematics b = ComputePathKinematics(*model, path, s - h);
  CHECK(((a.q - b.q) / (2 * h) - k.dq).norm() < 1e-6);
  CHECK(((a.dq - b.dq) / (2 * h) - k.ddq).norm() < 1e-5);
}

TEST_CASE("coordinate count mismatch is rejected") {
  const auto model = DefaultModel();
  PathSpec p;
  p.coords = {{PolyTerm{1.0, 0}}};
  CHECK_THROWS_AS(Project(*model, p, 0.5), Error);
}
