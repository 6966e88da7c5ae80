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

#include "topp/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "topp/error.hpp"

namespace topp {
namespace {

constexpr double kBoundTol = 1e-9;
constexpr double kSingularRel = 1e-12;
constexpr double kDualTol = 1e-10;

}  // namespace

const char* ToString(BoundSide side) {
  return side == BoundSide::kLower ? "lo" : "hi";
}

const char* ToString(AccelSense sense) {
  return sense == AccelSense::kMax ? "max" : "min";
}

std::string SaturationPattern::ToString() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < saturated.size(); ++i) {
    if (i) os << ",";
    os << saturated[i].index << topp::ToString(saturated[i].side);
  }
  os << "}";
  return os.str();
}

double BoundValue(const TorqueLimits& limits, const SatEntry& entry) {
  return entry.side == BoundSide::kLower ? limits.tau_min[entry.index]
                                         : limits.tau_max[entry.index];
}

SaturationPattern MakePattern(std::vector<SatEntry> saturated, int actuators) {
  std::sort(saturated.begin(), saturated.end());
  SaturationPattern p;
  std::vector<bool> used(actuators, false);
  for (const SatEntry& e : saturated) used[e.index] = true;
  for (int j = 0; j < actuators; ++j) {
    if (!used[j]) p.free.push_back(j);
  }
  p.saturated = std::move(saturated);
  return p;
}

PatternSolution SolvePattern(const ReducedPathDynamics& rd, double sdot,
                             const SaturationPattern& pattern,
                             const TorqueLimits& limits, AccelSense sense) {
  const int k = rd.rows();
  const int m = rd.actuators();
  if (static_cast<int>(pattern.free.size()) != k - 1 ||
      static_cast<int>(pattern.saturated.size()) != m - k + 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "saturation pattern does not match the dynamics dimensions");
  }
  SmallMat a(k, k);
  a.col(0) = rd.c;
  double scale = rd.c.norm();
  for (int i = 0; i < k - 1; ++i) {
    a.col(i + 1) = -rd.B.col(pattern.free[i]);
    scale *= a.col(i + 1).norm();
  }
  SmallVec rhs = -rd.d * (sdot * sdot) - rd.e;
  Vec tau(m);
  for (const SatEntry& e : pattern.saturated) {
    tau[e.index] = BoundValue(limits, e);
    rhs += rd.B.col(e.index) * tau[e.index];
  }
  const Eigen::PartialPivLU<SmallMat> lu(a);
  if (!(scale > 0.0) || std::abs(lu.determinant()) < kSingularRel * scale) {
    throw Error(ErrorCode::kSingularPattern,
                "singular pattern system " + pattern.ToString());
  }
  const SmallVec x = lu.solve(rhs);

  PatternSolution sol;
  sol.sddot = x[0];
  for (int i = 0; i < k - 1; ++i) {
    const int j = pattern.free[i];
    tau[j] = x[i + 1];
    if (tau[j] < limits.tau_min[j] - kBoundTol ||
        tau[j] > limits.tau_max[j] + kBoundTol) {
      sol.within_bounds = false;
    }
  }
  sol.tau = std::move(tau);

  // lambda' B_j is d(sddot)/d(tau_j) for a saturated actuator j.
  SmallVec unit = SmallVec::Zero(k);
  unit[0] = 1.0;
  const SmallVec lambda = lu.transpose().solve(unit);
  const double sign = sense == AccelSense::kMax ? 1.0 : -1.0;
  for (const SatEntry& e : pattern.saturated) {
    const double grad = sign * lambda.dot(rd.B.col(e.index));
    const double tol = kDualTol * lambda.norm() * rd.B.col(e.index).norm();
    const bool ok = e.side == BoundSide::kUpper ? grad >= -tol : grad <= tol;
    if (!ok) {
      sol.optimal = false;
      break;
    }
  }
  return sol;
}

Vec RecoverTorques(const ReducedPathDynamics& rd, double sdot, double sddot,
                   const SaturationPattern& pattern,
                   const TorqueLimits& limits) {
  const PatternSolution sol =
      SolvePattern(rd, sdot, pattern, limits, AccelSense::kMax);
  if (std::abs(sol.sddot - sddot) > 1e-8 * std::max(1.0, std::abs(sddot))) {
    throw Error(ErrorCode::kInconsistentAcceleration,
                "pattern " + pattern.ToString() + " implies sddot " +
                    std::to_string(sol.sddot) + ", expected " +
                    std::to_string(sddot));
  }
  return sol.tau;
}

bool SelectPattern(const ReducedPathDynamics& rd, double sdot, double sddot,
                   std::span<const SatEntry> candidates,
                   const TorqueLimits& limits, AccelSense sense,
                   SaturationPattern* out) {
  const int m = rd.actuators();
  const int need = m - rd.rows() + 1;
  std::vector<SatEntry> pool(candidates.begin(), candidates.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  const int count = static_cast<int>(pool.size());
  if (count < need) return false;

  // Lexicographic enumeration of index combinations.
  std::vector<int> pick(need);
  for (int i = 0; i < need; ++i) pick[i] = i;
  while (true) {
    std::vector<SatEntry> chosen;
    bool distinct = true;
    for (int i : pick) {
      if (!chosen.empty() && chosen.back().index == pool[i].index) {
        distinct = false;
        break;
      }
      chosen.push_back(pool[i]);
    }
    if (distinct) {
      SaturationPattern p = MakePattern(chosen, m);
      try {
        const PatternSolution sol = SolvePattern(rd, sdot, p, limits, sense);
        if (sol.within_bounds && sol.optimal &&
            std::abs(sol.sddot - sddot) <=
                1e-7 * std::max(1.0, std::abs(sddot))) {
          *out = std::move(p);
          return true;
        }
      } catch (const Error&) {
        // singular subset
      }
    }
    int i = need - 1;
    while (i >= 0 && pick[i] == count - need + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < need; ++j) pick[j] = pick[j - 1] + 1;
  }
  return false;
}

}  // namespace topp
