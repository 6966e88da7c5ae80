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

#include <string>
#include <variant>
#include <vector>

#include "topp/types.hpp"

namespace topp {

// a * s^k
struct PolyTerm {
  double a = 0.0;
  int k = 0;
};

enum class TrigKind { kSin, kCos };

// a * sin(2 pi w s + phi)  or  a * cos(2 pi w s + phi)
struct TrigTerm {
  double a = 0.0;
  TrigKind kind = TrigKind::kSin;
  double w = 1.0;
  double phi = 0.0;
};

using PathTerm = std::variant<PolyTerm, TrigTerm>;

// Task-space curve x_i = f_i(s), s in [0, 1], one term list per coordinate.
struct PathSpec {
  std::vector<std::vector<PathTerm>> coords;

  int size() const { return static_cast<int>(coords.size()); }
};

struct PathPoint {
  Vec f;
  Vec df;   // f'(s)
  Vec ddf;  // f''(s)
};

struct BoundaryConditions {
  double sdot_i = 0.0;
  double sdot_f = 0.0;

  void Validate() const;
};

// Exact analytic derivatives. s may sit up to 1e-6 outside [0, 1].
PathPoint EvaluatePath(const PathSpec& path, double s);

// Polynomial/sinusoid payload paths used by the planar examples.
PathSpec Example1Path();        // quintic lift with a linear sweep
PathSpec Example1CirclePath();  // full circle with a rotating payload

// "example1" or "example1-circle"; throws kInvalidArgument otherwise.
PathSpec BuiltinPath(const std::string& name);
// Boundary velocities paired with each built-in path.
BoundaryConditions BuiltinBoundary(const std::string& name);

}  // namespace topp
