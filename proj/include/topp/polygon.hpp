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

#include <vector>

#include "topp/model.hpp"
#include "topp/pattern.hpp"
#include "topp/projection.hpp"
#include "topp/types.hpp"

namespace topp {

// Path dynamics premultiplied by the inverse of an invertible block B_a of
// the actuation matrix: tau_a = cbar*sddot + dbar*sdot^2 + ebar - Bbar*tau_b.
struct NormalizedDynamics {
  double s = 0.0;
  Vec cbar;
  Vec dbar;
  Vec ebar;
  Mat Bbar;
  std::vector<int> basis;       // sorted
  std::vector<int> complement;  // sorted
};

// Column-pivoted elimination; throws kRankDeficient if a pivot drops below
// 1e-10.
NormalizedDynamics ChooseBasis(const ReducedPathDynamics& rd);

// Throws kSingularPattern when the requested columns are not independent.
NormalizedDynamics Normalize(const ReducedPathDynamics& rd,
                             std::vector<int> basis);

struct PolygonOptions {
  double sdot2_cap = 1e6;
  double dedup_tol = 1e-9;
};

struct PolygonVertex {
  double sdot2 = 0.0;
  double sddot = 0.0;
  std::vector<SatEntry> saturated;  // sorted
  Vec tau;
  // Produced by clipping against sdot2 = 0 or the cap rather than by two
  // constraint lines; carries one saturated actuator fewer.
  bool clipped = false;
};

struct ConstraintPolygon {
  double s = 0.0;
  std::vector<PolygonVertex> vertices;  // counter-clockwise
  double sdot2_cap = 0.0;
  ReducedPathDynamics dynamics;
  TorqueLimits limits;

  bool empty() const { return vertices.empty(); }
  double MaxSdot2() const;
  bool capped() const;
};

// Candidate vertices from a single basis (bound choices of tau_b, pairwise
// line intersections, tau_a feasibility). Not deduplicated or hulled.
std::vector<PolygonVertex> BasisVertices(const NormalizedDynamics& nd,
                                         const ReducedPathDynamics& rd,
                                         const TorqueLimits& limits,
                                         double sdot2_cap);

// Runs the per-basis construction over the pivoted basis and every other
// invertible basis, then merges and hulls the result.
ConstraintPolygon BuildPolygon(const ReducedPathDynamics& rd,
                               const TorqueLimits& limits,
                               const PolygonOptions& options = {});

struct ExtremalAccels {
  double sddot_min = 0.0;
  double sddot_max = 0.0;
  SaturationPattern pattern_min;
  SaturationPattern pattern_max;
  bool has_pattern_min = false;
  bool has_pattern_max = false;
};

ExtremalAccels ExtremalAcc(const ConstraintPolygon& poly, double sdot);

struct MvcValue {
  double sdot = 0.0;
  bool capped = false;
};

MvcValue MvcVelocity(const ConstraintPolygon& poly);

// Point-in-polygon with an absolute tolerance on the half-plane tests.
bool Contains(const ConstraintPolygon& poly, double sdot2, double sddot,
              double tol);

}  // namespace topp
