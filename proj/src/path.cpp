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

#include "topp/path.hpp"

#include <cmath>
#include <numbers>

#include "topp/error.hpp"

namespace topp {
namespace {

constexpr double kDomainSlack = 1e-6;

struct Triple {
  double f = 0.0, df = 0.0, ddf = 0.0;
};

Triple EvalTerm(const PolyTerm& t, double s) {
  Triple out;
  out.f = t.a * std::pow(s, t.k);
  if (t.k >= 1) out.df = t.a * t.k * std::pow(s, t.k - 1);
  if (t.k >= 2) out.ddf = t.a * t.k * (t.k - 1) * std::pow(s, t.k - 2);
  return out;
}

Triple EvalTerm(const TrigTerm& t, double s) {
  const double omega = 2.0 * std::numbers::pi * t.w;
  const double arg = omega * s + t.phi;
  const double sn = std::sin(arg), cs = std::cos(arg);
  if (t.kind == TrigKind::kSin) {
    return {t.a * sn, t.a * omega * cs, -t.a * omega * omega * sn};
  }
  return {t.a * cs, -t.a * omega * sn, -t.a * omega * omega * cs};
}

}  // namespace

void BoundaryConditions::Validate() const {
  if (!(sdot_i >= 0.0) || !(sdot_f >= 0.0) || !std::isfinite(sdot_i) ||
      !std::isfinite(sdot_f)) {
    throw Error(ErrorCode::kInvalidArgument,
                "boundary velocities must be finite and >= 0");
  }
}

PathPoint EvaluatePath(const PathSpec& path, double s) {
  if (s < -kDomainSlack || s > 1.0 + kDomainSlack || !std::isfinite(s)) {
    throw Error(ErrorCode::kInvalidArgument,
                "path parameter outside [0, 1]: " + std::to_string(s));
  }
  const int r = path.size();
  PathPoint pt{Vec::Zero(r), Vec::Zero(r), Vec::Zero(r)};
  for (int i = 0; i < r; ++i) {
    for (const PathTerm& term : path.coords[i]) {
      const Triple t =
          std::visit([s](const auto& x) { return EvalTerm(x, s); }, term);
      pt.f[i] += t.f;
      pt.df[i] += t.df;
      pt.ddf[i] += t.ddf;
    }
  }
  return pt;
}

PathSpec Example1Path() {
  PathSpec p;
  p.coords.resize(3);
  // x = 0.6 (s - 0.5) + 0.7
  p.coords[0] = {PolyTerm{0.6, 1}, PolyTerm{0.4, 0}};
  p.coords[1] = {PolyTerm{-3.46, 5}, PolyTerm{8.66, 4}, PolyTerm{-5.77, 3},
                 PolyTerm{0.58, 1}, PolyTerm{0.7, 0}};
  // gamma = -0.45 (s - 0.5)
  p.coords[2] = {PolyTerm{-0.45, 1}, PolyTerm{0.225, 0}};
  return p;
}

PathSpec Example1CirclePath() {
  PathSpec p;
  p.coords.resize(3);
  p.coords[0] = {TrigTerm{0.2, TrigKind::kCos, 1.0, 0.0}, PolyTerm{0.7, 0}};
  p.coords[1] = {TrigTerm{0.2, TrigKind::kSin, 1.0, 0.0}, PolyTerm{0.62, 0}};
  p.coords[2] = {PolyTerm{0.7, 1}};
  return p;
}

PathSpec BuiltinPath(const std::string& name) {
  if (name == "example1") return Example1Path();
  if (name == "example1-circle") return Example1CirclePath();
  throw Error(ErrorCode::kInvalidArgument, "unknown built-in path: " + name);
}

BoundaryConditions BuiltinBoundary(const std::string& name) {
  if (name == "example1") return {4.0, 4.0};
  if (name == "example1-circle") return {0.0, 0.0};
  throw Error(ErrorCode::kInvalidArgument, "unknown built-in path: " + name);
}

}  // namespace topp
