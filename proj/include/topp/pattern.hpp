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

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "topp/model.hpp"
#include "topp/projection.hpp"
#include "topp/types.hpp"

namespace topp {

enum class BoundSide : unsigned char { kLower, kUpper };
enum class AccelSense : unsigned char { kMax, kMin };

const char* ToString(BoundSide side);  // "lo" / "hi"
const char* ToString(AccelSense sense);  // "max" / "min"

// One actuator held at one of its torque bounds.
struct SatEntry {
  int index = 0;
  BoundSide side = BoundSide::kLower;

  auto operator<=>(const SatEntry&) const = default;
};

// Exactly m - (n-p) + 1 saturated actuators; the remaining n-p-1 are free.
struct SaturationPattern {
  std::vector<SatEntry> saturated;  // sorted
  std::vector<int> free;            // sorted

  bool operator==(const SaturationPattern&) const = default;
  std::string ToString() const;
};

double BoundValue(const TorqueLimits& limits, const SatEntry& entry);

// Builds a pattern from a saturated set; free = the complement.
SaturationPattern MakePattern(std::vector<SatEntry> saturated, int actuators);

// Solution of the square system
//   [c  -B_free] [sddot; tau_free] = -d sdot^2 - e + B_sat tau_sat.
struct PatternSolution {
  double sddot = 0.0;
  Vec tau;                    // full torque vector
  bool within_bounds = true;  // every free torque inside its limits (+1e-9)
  // Dual check: no saturated actuator could be released to improve sddot in
  // the requested sense. A pattern that is within bounds and optimal
  // reproduces the LP extremum.
  bool optimal = true;
};

// Throws kSingularPattern if the system is singular.
PatternSolution SolvePattern(const ReducedPathDynamics& rd, double sdot,
                             const SaturationPattern& pattern,
                             const TorqueLimits& limits, AccelSense sense);

// Torques realizing (sdot, sddot) under `pattern`. Throws
// kInconsistentAcceleration if the pattern implies a different sddot.
Vec RecoverTorques(const ReducedPathDynamics& rd, double sdot, double sddot,
                   const SaturationPattern& pattern,
                   const TorqueLimits& limits);

// Picks, among the (m-(n-p)+1)-subsets of `candidates` in lexicographic
// order, the first whose pattern reproduces `sddot`, stays within bounds and
// passes the dual check. Returns false when no subset qualifies.
bool SelectPattern(const ReducedPathDynamics& rd, double sdot, double sddot,
                   std::span<const SatEntry> candidates,
                   const TorqueLimits& limits, AccelSense sense,
                   SaturationPattern* out);

}  // namespace topp
