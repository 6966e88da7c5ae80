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

#include <optional>
#include <vector>

#include "topp/pattern.hpp"
#include "topp/projection.hpp"
#include "topp/types.hpp"

namespace topp {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

// minimize cost' z  subject to  A z = b,  z >= 0.
struct StandardFormLp {
  Mat A;
  Vec b;
  Vec cost;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Vec z;
  double objective = 0.0;
  std::vector<int> basis;  // basic column per row, -1 for dropped rows
};

// Dense two-phase tableau simplex with Bland's anti-cycling rule.
LpSolution SolveStandardForm(const StandardFormLp& lp);

struct LpExtremum {
  double sddot = 0.0;
  Vec tau;
  std::vector<SatEntry> at_bounds;  // actuators within 1e-9 of a bound
  SaturationPattern pattern;
  bool has_pattern = false;
};

// max/min sddot subject to c sddot + d sdot^2 + e = B tau, tau in limits.
// Throws kInfeasibleLp when no torque balances the system, kUnboundedLp when
// sddot is unbounded.
LpExtremum LpExtremalAcc(const ReducedPathDynamics& rd, double sdot,
                         AccelSense sense, const TorqueLimits& limits);

// True when some tau within limits realizes (sdot^2, sddot).
bool LpFeasible(const ReducedPathDynamics& rd, double sdot2, double sddot,
                const TorqueLimits& limits);

// Largest feasible sdot^2 at this s; nullopt when nothing is feasible,
// +inf when unbounded.
std::optional<double> LpMaxSdot2(const ReducedPathDynamics& rd,
                                 const TorqueLimits& limits);

}  // namespace topp
