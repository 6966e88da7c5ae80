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
#include "topp/lp.hpp"
#include "topp/pattern.hpp"
#include "topp/polygon.hpp"

using namespace topp;
using topp::testing::Rng;
using topp::testing::DefaultModel;
using topp::testing::Uniform;

namespace {

ReducedPathDynamics Toy(double c, double d, double e) {
  ReducedPathDynamics rd;
  rd.c = Vec::Constant(1, c);
  rd.d = Vec::Constant(1, d);
  rd.e = Vec::Constant(1, e);
  rd.B = Mat::Ones(1, 2);
  return rd;
}

TorqueLimits UnitBox(int m) { return TorqueLimits::Symmetric(Vec::Ones(m)); }

}  // namespace

TEST_CASE("standard form simplex on a small problem") {
  // min -x1 - x2 s.t. x1 + 2 x2 + s1 = 4, 3 x1 + x2 + s2 = 6.
  StandardFormLp lp;
  lp.A.resize(2, 4);
  lp.A << 1, 2, 1, 0,
          3, 1, 0, 1;
  lp.b = Vec2(4, 6);
  lp.cost.resize(4);
  lp.cost << -1, -1, 0, 0;
  const LpSolution sol = SolveStandardForm(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  CHECK(sol.z[0] == doctest::Approx(1.6));
  CHECK(sol.z[1] == doctest::Approx(1.2));
  CHECK(sol.objective == doctest::Approx(-2.8));
}

TEST_CASE("standard form simplex reports infeasible and unbounded") {
  StandardFormLp lp;
  lp.A.resize(1, 2);
  lp.A << 1, 1;
  lp.b = Vec::Constant(1, -1.0);
  lp.cost = Vec2(1, 1);
  CHECK(SolveStandardForm(lp).status == LpStatus::kInfeasible);

  lp.A << 1, -1;
  lp.b = Vec::Constant(1, 0.0);
  lp.cost = Vec2(-1, 0);
  CHECK(SolveStandardForm(lp).status == LpStatus::kUnbounded);
}

TEST_CASE("toy one-row extremal acceleration") {
  const ReducedPathDynamics rd = Toy(1.0, 0.0, 1.0);
  const LpExtremum hi = LpExtremalAcc(rd, 0.0, AccelSense::kMax, UnitBox(2));
  CHECK(hi.sddot == doctest::Approx(1.0));
  CHECK(hi.tau[0] == doctest::Approx(1.0));
  CHECK(hi.tau[1] == doctest::Approx(1.0));
  CHECK(hi.at_bounds.size() == 2);
  const LpExtremum lo = LpExtremalAcc(rd, 0.0, AccelSense::kMin, UnitBox(2));
  CHECK(lo.sddot == doctest::Approx(-3.0));
}

TEST_CASE("toy recover torques") {
  const ReducedPathDynamics rd = Toy(1.0, 0.0, 0.0);
  const SaturationPattern p = MakePattern(
      {{0, BoundSide::kUpper}, {1, BoundSide::kUpper}}, 2);
  CHECK(p.free.empty());
  const Vec tau = RecoverTorques(rd, 3.0, 2.0, p, UnitBox(2));
  CHECK(tau[0] == 1.0);
  CHECK(tau[1] == 1.0);
  CHECK_THROWS_AS(RecoverTorques(rd, 3.0, 1.5, p, UnitBox(2)), Error);
}

TEST_CASE("lp infeasible when gravity exceeds capability") {
  const auto model = DefaultModel();
  ReducedPathDynamics rd = Project(*model, Example1Path(), 0.5);
  rd.e *= 100.0;
  CHECK_FALSE(LpFeasible(rd, 0.0, 0.0, model->limits()));
  CHECK_FALSE(LpMaxSdot2(rd, model->limits()).has_value());
  try {
    LpExtremalAcc(rd, 0.0, AccelSense::kMax, model->limits());
    FAIL("expected an infeasible LP");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInfeasibleLp);
  }
}

TEST_CASE("lp optimum saturates at least four actuators") {
  const auto model = DefaultModel();
  const PathSpec path = Example1Path();
  auto rng = Rng(21);
  for (int i = 0; i < 100; ++i) {
    const double s = Uniform(rng, 0.0, 1.0);
    const ReducedPathDynamics rd = Project(*model, path, s);
    const auto xmax = LpMaxSdot2(rd, model->limits());
    REQUIRE(xmax.has_value());
    const double sdot = std::sqrt(*xmax) * Uniform(rng, 0.0, 0.999);
    for (AccelSense sense : {AccelSense::kMax, AccelSense::kMin}) {
      const LpExtremum r = LpExtremalAcc(rd, sdot, sense, model->limits());
      int at_bounds = 0;
      for (int j = 0; j < 6; ++j) {
        if (std::abs(r.tau[j] - model->limits().tau_min[j]) < 1e-9 ||
            std::abs(r.tau[j] - model->limits().tau_max[j]) < 1e-9) {
          ++at_bounds;
        }
      }
      REQUIRE(at_bounds >= 4);
      REQUIRE(r.has_pattern);
      // The equality constraints hold at the optimum.
      const Vec res = rd.c * r.sddot + rd.d * sdot * sdot + rd.e - rd.B * r.tau;
      REQUIRE(res.norm() < 1e-9);
    }
  }
}

TEST_CASE("lp pattern round trip") {
  const auto model = DefaultModel();
  const ReducedPathDynamics rd = Project(*model, Example1Path(), 0.42);
  const double sdot = 3.0;
  const LpExtremum r = LpExtremalAcc(rd, sdot, AccelSense::kMax, model->limits());
  REQUIRE(r.has_pattern);
  const Vec tau = RecoverTorques(rd, sdot, r.sddot, r.pattern, model->limits());
  for (const SatEntry& e : r.pattern.saturated) {
    CHECK(tau[e.index] == BoundValue(model->limits(), e));
  }
  CHECK((tau - r.tau).norm() < 1e-8);
  const PatternSolution sol =
      SolvePattern(rd, sdot, r.pattern, model->limits(), AccelSense::kMax);
  CHECK(sol.within_bounds);
  CHECK(sol.optimal);
  CHECK(std::abs(sol.sddot - r.sddot) < 1e-10);
}

TEST_CASE("flipping a bound side is detected") {
  const auto model = DefaultModel();
  const ReducedPathDynamics rd = Project(*model, Example1Path(), 0.42);
  const double sdot = 3.0;
  const LpExtremum r = LpExtremalAcc(rd, sdot, AccelSense::kMax, model->limits());
  REQUIRE(r.has_pattern);
  int flagged = 0;
  for (std::size_t i = 0; i < r.pattern.saturated.size(); ++i) {
    std::vector<SatEntry> sat = r.pattern.saturated;
    sat[i].side = sat[i].side == BoundSide::kLower ? BoundSide::kUpper
                                                   : BoundSide::kLower;
    std::sort(sat.begin(), sat.end());
    const SaturationPattern wrong = MakePattern(sat, 6);
    const PatternSolution sol =
        SolvePattern(rd, sdot, wrong, model->limits(), AccelSense::kMax);
    // Moving one torque across its whole range cannot keep the optimum.
    if (!sol.within_bounds || !sol.optimal ||
        sol.sddot < r.sddot - 1e-9) {
      ++flagged;
    }
    CHECK(sol.sddot <= r.sddot + 1e-9);
  }
  CHECK(flagged == static_cast<int>(r.pattern.saturated.size()));
}

TEST_CASE("select pattern recovers the lp pattern") {
  const auto model = DefaultModel();
  const ReducedPathDynamics rd = Project(*model, Example1Path(), 0.7);
  const double sdot = 2.0;
  const LpExtremum r = LpExtremalAcc(rd, sdot, AccelSense::kMin, model->limits());
  SaturationPattern chosen;
  REQUIRE(SelectPattern(rd, sdot, r.sddot, r.at_bounds, model->limits(),
                        AccelSense::kMin, &chosen));
  const PatternSolution sol =
      SolvePattern(rd, sdot, chosen, model->limits(), AccelSense::kMin);
  CHECK(std::abs(sol.sddot - r.sddot) < 1e-9);
}

TEST_CASE("pattern formatting and size checks") {
  const SaturationPattern p =
      MakePattern({{0, BoundSide::kUpper}, {3, BoundSide::kLower}}, 4);
  CHECK(p.free == std::vector<int>{1, 2});
  CHECK_FALSE(p.ToString().empty());
  CHECK(std::string(ToString(BoundSide::kUpper)) == "hi");
  CHECK(std::string(ToString(AccelSense::kMin)) == "min");
  const auto model = DefaultModel();
  const ReducedPathDynamics rd = Project(*model, Example1Path(), 0.5);
  CHECK_THROWS_AS(SolvePattern(rd, 1.0, p, model->limits(), AccelSense::kMax),
                  Error);
}
