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

#include "topp/error.hpp"

namespace topp {

const char* ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidParameter: return "invalid-parameter";
    case ErrorCode::kInvalidLimits: return "invalid-limits";
    case ErrorCode::kUnreachablePose: return "unreachable-pose";
    case ErrorCode::kSingularJacobian: return "singular-jacobian";
    case ErrorCode::kRankDeficient: return "rank-deficient";
    case ErrorCode::kEmptyPolygon: return "empty-polygon";
    case ErrorCode::kVelocityInfeasible: return "velocity-infeasible";
    case ErrorCode::kInfeasibleLp: return "infeasible-lp";
    case ErrorCode::kUnboundedLp: return "unbounded-lp";
    case ErrorCode::kSingularPattern: return "singular-pattern";
    case ErrorCode::kInconsistentAcceleration: return "inconsistent-acceleration";
    case ErrorCode::kInfeasibleBoundary: return "infeasible-boundary";
    case ErrorCode::kNoSolution: return "no-solution";
    case ErrorCode::kDivergentTime: return "divergent-time";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kBenchmarkMismatch: return "benchmark-mismatch";
  }
  return "unknown";
}

}  // namespace topp
