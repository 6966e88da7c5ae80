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
#include <span>
#include <string>
#include <vector>

#include "topp/model.hpp"
#include "topp/path.hpp"
#include "topp/pattern.hpp"
#include "topp/polygon.hpp"
#include "topp/projection.hpp"
#include "topp/types.hpp"

namespace topp {

enum class Direction : unsigned char { kForward, kBackward };

enum class Termination : unsigned char {
  kCrossedS0,
  kCrossedS1,
  kEnteredNfr,
  kHitExistingCurve,
  kSdotZero,
  kStepLimit,
};

enum class IntegrationMethod : unsigned char { kSpa, kLpEveryStep };

enum class SwitchKind : unsigned char {
  kCurveIntersection,
  kZeroInertia,
  kSmoothCritical,
};

enum class ProcedureKind : unsigned char { kDirect, kSemiDirect, kIndirect };

enum class CriticalKind : unsigned char {
  kSinkSource,
  kSourceSink,
  kSinkSink,
  kSourceSource,
  kNotOnBoundary,
  kUnclassified,
};

const char* ToString(Termination t);
const char* ToString(SwitchKind k);
const char* ToString(ProcedureKind k);
const char* ToString(CriticalKind k);

struct PhasePoint {
  double s = 0.0;
  double sdot = 0.0;
};

struct CurvePoint {
  double s = 0.0;
  double sdot = 0.0;
  double sddot = 0.0;
  Vec tau;
};

struct TrajectorySegment {
  int id = -1;
  Direction direction = Direction::kForward;
  AccelSense sense = AccelSense::kMax;
  std::vector<CurvePoint> points;  // in integration order
  Termination termination = Termination::kStepLimit;
  std::vector<std::pair<int, SaturationPattern>> pattern_history;
  int hit_curve = -1;  // id of the curve crossed, if any
  int origin = -1;     // critical point this curve was started from

  double s_lo() const;
  double s_hi() const;
  bool Covers(double s) const;
  // Linear interpolation in s; the curve must cover s.
  double SdotAt(double s) const;
  double SddotAt(double s) const;
};

struct ZeroInertiaPoint {
  double s = 0.0;
  double sdot = 0.0;
  std::vector<int> free_set;  // actuators spanning c at s
  int row_actuator = -1;      // basis column whose normalized row vanishes
  double residual = 0.0;      // |cbar_i| in the row's basis
  bool feasible = false;
  CriticalKind kind = CriticalKind::kUnclassified;
};

struct MvcSample {
  double s = 0.0;
  double sdot = 0.0;
  double sddot = 0.0;  // extremal acceleration at the MVC vertex
  double kprime = 0.0;
  bool capped = false;
};

struct MvcSegment {
  double s_lo = 0.0;
  double s_hi = 0.0;
  std::vector<MvcSample> samples;
};

struct SwitchPoint {
  PhasePoint location;
  SwitchKind kind = SwitchKind::kCurveIntersection;
  AccelSense from = AccelSense::kMax;
  AccelSense to = AccelSense::kMin;
};

struct EnvelopePiece {
  AccelSense sign = AccelSense::kMax;
  int curve = -1;
  std::vector<CurvePoint> points;  // increasing s; tau left empty
};

struct SolveStats {
  long mvc_polygon_builds = 0;      // MVC construction and refinement
  long refresh_polygon_builds = 0;  // pattern identification while integrating
  long check_polygon_builds = 0;    // single-point MVC checks
  long lp_calls = 0;
  long spa_solves = 0;
  long steps = 0;
  double mvc_seconds = 0.0;
  double total_seconds = 0.0;
};

struct SolveOptions {
  double dt = 1e-3;
  int mvc_samples_per_unit = 1000;
  int zero_inertia_grid = 2000;
  IntegrationMethod method = IntegrationMethod::kSpa;
  // Sample the MVC over the whole path before solving, as baseline methods
  // that do not skip MVC construction must.
  bool full_mvc = false;
  int probe_steps = 5;
  long max_steps = 2'000'000;
  int max_step_halvings = 12;
  PolygonOptions polygon;

  void Validate() const;
};

struct SolutionCurve {
  ProcedureKind procedure = ProcedureKind::kDirect;
  double gamma = 0.0;
  std::vector<SwitchPoint> switch_points;
  std::vector<EnvelopePiece> segments;
  std::vector<MvcSample> mvc;
  BoundaryConditions boundary;
  std::vector<TrajectorySegment> curves;
  std::vector<ZeroInertiaPoint> zero_inertia;
  std::vector<PhasePoint> smooth_critical;
  SolveStats stats;

  // Concatenated envelope with junction duplicates removed.
  std::vector<CurvePoint> Envelope() const;
};

struct SpaResult {
  double sddot = 0.0;
  Vec tau;
  bool valid = false;
  bool optimal = false;
};

// One saturation-pattern solve; a singular system reports valid = false.
SpaResult SpaStep(const ReducedPathDynamics& rd, const SaturationPattern& pattern,
                  double sdot, const TorqueLimits& limits, AccelSense sense);

class PhasePlaneSolver {
 public:
  // `dynamics` must outlive the solver.
  PhasePlaneSolver(const PathDynamics& dynamics, SolveOptions options = {});

  struct Accel {
    double sddot = 0.0;
    Vec tau;
  };

  struct IntegrateOptions {
    long max_steps = -1;  // -1: use SolveOptions::max_steps
    // Start is a zero-inertia point: keep it as the first vertex but take
    // the first step from its one-sided neighbour.
    bool singular_start = false;
  };

  // Extremal acceleration at (s, sdot). `pattern` carries the saturation
  // pattern between calls; nullopt means the point is above the MVC.
  std::optional<Accel> Evaluate(double s, double sdot, AccelSense sense,
                                std::optional<SaturationPattern>& pattern);

  TrajectorySegment Integrate(PhasePoint start, Direction direction,
                              AccelSense sense,
                              std::span<const TrajectorySegment> existing,
                              int origin, IntegrateOptions opts);
  TrajectorySegment Integrate(PhasePoint start, Direction direction,
                              AccelSense sense,
                              std::span<const TrajectorySegment> existing,
                              int origin) {
    return Integrate(start, direction, sense, existing, origin, {});
  }

  std::vector<ZeroInertiaPoint> FindZeroInertia();
  CriticalKind Classify(const ZeroInertiaPoint& pt);
  MvcSegment ConstructMvc(double s_lo, double s_hi);
  std::vector<PhasePoint> FindSmoothCritical(const MvcSegment& mvc);
  double MvcAt(double s);

  SolutionCurve Solve(const BoundaryConditions& bc);

  const SolveStats& stats() const { return stats_; }
  const SolveOptions& options() const { return options_; }

 private:
  struct Sample {
    double sdot;
    double sddot;
    bool capped;
  };
  std::optional<Accel> Evaluate(double s, double sdot, AccelSense sense,
                                std::optional<SaturationPattern>& pattern,
                                double clamp_rel);
  Sample MvcPoint(double s, long* counter);
  double Phi(double s);

  const PathDynamics& dyn_;
  SolveOptions options_;
  SolveStats stats_;
  std::vector<MvcSample> full_mvc_;
};

// MVC on `intervals` equal cells of [s_lo, s_hi], k' by finite differences.
std::vector<MvcSample> SampleMvc(const PathDynamics& dynamics, double s_lo,
                                 double s_hi, int intervals,
                                 const PolygonOptions& polygon = {});

// Elapsed time over an envelope, trapezoidal in 1/sdot. Cells touching
// sdot = 0 at the path ends use the constant-acceleration closed form.
double TimeOf(std::span<const CurvePoint> points);

struct TrajectorySample {
  double t = 0.0;
  double s = 0.0;
  double sdot = 0.0;
  double sddot = 0.0;
  Vec q;
  Vec qdot;
  Vec tau;
  int saturated = 0;
};

std::vector<TrajectorySample> SampleJointTrajectory(
    const SolutionCurve& curve, const RobotModel& model, const PathSpec& path,
    double dt, const PolygonOptions& polygon = {});

// Convenience wrapper around ProjectedPath and PhasePlaneSolver.
SolutionCurve Solve(const RobotModel& model, const PathSpec& path,
                    const BoundaryConditions& bc,
                    const SolveOptions& options = {});

}  // namespace topp
