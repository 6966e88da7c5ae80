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

// Acceptance checks for the planar two-arm examples. Prints one PASS/FAIL
// line per check and exits non-zero if any check fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "topp/bench.hpp"
#include "topp/error.hpp"
#include "topp/log.hpp"
#include "topp/lp.hpp"
#include "topp/model.hpp"
#include "topp/path.hpp"
#include "topp/phaseplane.hpp"
#include "topp/polygon.hpp"
#include "topp/projection.hpp"

using namespace topp;

namespace {

struct Published {
  double s, sdot;
};
constexpr Published kSwitches[] = {{0.0945, 5.2431},
                                   {0.2672, 5.4703},
                                   {0.4345, 6.3232},
                                   {0.8526, 4.1395},
                                   {0.9630, 4.7920}};

int failures = 0;

void Report(int id, bool ok, const std::string& what) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string Fmt(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

int AtBounds(const Vec& tau, const TorqueLimits& limits, double tol) {
  int n = 0;
  for (int j = 0; j < limits.size(); ++j) {
    if (std::abs(tau[j] - limits.tau_min[j]) < tol ||
        std::abs(tau[j] - limits.tau_max[j]) < tol) {
      ++n;
    }
  }
  return n;
}

bool WithinLimits(const Vec& tau, const TorqueLimits& limits, double tol) {
  for (int j = 0; j < limits.size(); ++j) {
    if (tau[j] < limits.tau_min[j] - tol || tau[j] > limits.tau_max[j] + tol) {
      return false;
    }
  }
  return true;
}

double Residual(const ReducedPathDynamics& rd, double sdot, double sddot,
                const Vec& tau) {
  const Vec r = rd.c * sddot + rd.d * (sdot * sdot) + rd.e - rd.B * tau;
  return r.cwiseAbs().maxCoeff();
}

struct Sample {
  double s;
  double sdot;
};

// Random (s, sdot) strictly inside the feasible region.
std::vector<Sample> FeasibleSamples(const PathDynamics& dyn, int count,
                                    unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Sample> out;
  while (static_cast<int>(out.size()) < count) {
    const double s = u(rng);
    const std::optional<double> xmax = LpMaxSdot2(dyn.At(s), dyn.limits());
    if (!xmax || !std::isfinite(*xmax) || *xmax <= 0.0) continue;
    out.push_back({s, std::sqrt(*xmax) * u(rng)});
  }
  return out;
}

void CheckExampleOne(const SolutionCurve& sol) {
  bool ok = sol.procedure == ProcedureKind::kSemiDirect &&
            sol.switch_points.size() == std::size(kSwitches);
  std::string detail = Fmt("%s, %zu switch points",
                           ToString(sol.procedure), sol.switch_points.size());
  if (sol.switch_points.size() == std::size(kSwitches)) {
    for (std::size_t i = 0; i < std::size(kSwitches); ++i) {
      const PhasePoint& p = sol.switch_points[i].location;
      ok = ok && std::abs(p.s - kSwitches[i].s) <= 0.02 &&
           std::abs(p.sdot - kSwitches[i].sdot) <= 0.15;
      detail += Fmt(" S%zu(%.4f,%.4f)", i + 1, p.s, p.sdot);
    }
  }
  ok = ok && std::abs(sol.gamma - 0.206) <= 0.01;
  detail += Fmt(", Gamma %.5f", sol.gamma);

  double bi = -1.0, bf = -1.0;
  for (const TrajectorySegment& c : sol.curves) {
    if (c.origin != -1 || c.termination != Termination::kEnteredNfr) continue;
    if (c.direction == Direction::kForward && bi < 0.0) bi = c.points.back().s;
    if (c.direction == Direction::kBackward && bf < 0.0) bf = c.points.back().s;
  }
  ok = ok && std::abs(bi - 0.1434) <= 0.02 && std::abs(bf - 0.9301) <= 0.02;
  detail += Fmt(", nfr entries %.4f / %.4f", bi, bf);
  Report(1, ok, "example I " + detail);
}

void CheckCircle(const RobotModel& model) {
  const SolutionCurve sol = Solve(model, Example1CirclePath(), {0.0, 0.0});
  const bool ok = sol.procedure == ProcedureKind::kDirect &&
                  sol.stats.mvc_polygon_builds == 0;
  Report(2, ok, Fmt("circle path %s with %ld mvc polygon builds",
                    ToString(sol.procedure), sol.stats.mvc_polygon_builds));
}

// Returns the fewest actuators at bounds over the LP optima.
int CheckSpaAndLp(const PathDynamics& dyn) {
  const TorqueLimits& limits = dyn.limits();
  const std::vector<Sample> samples = FeasibleSamples(dyn, 500, 7);
  double worst = 0.0;
  int min_bounds = 1 << 20;
  bool ok3 = true;
  for (const Sample& x : samples) {
    const ReducedPathDynamics rd = dyn.At(x.s);
    const ConstraintPolygon poly = BuildPolygon(rd, limits);
    const ExtremalAccels ex = ExtremalAcc(poly, x.sdot);
    for (AccelSense sense : {AccelSense::kMax, AccelSense::kMin}) {
      const bool max = sense == AccelSense::kMax;
      const LpExtremum lp = LpExtremalAcc(rd, x.sdot, sense, limits);
      min_bounds = std::min(min_bounds, AtBounds(lp.tau, limits, 1e-9));
      if (!(max ? ex.has_pattern_max : ex.has_pattern_min)) {
        ok3 = false;
        continue;
      }
      const SpaResult spa = SpaStep(
          rd, max ? ex.pattern_max : ex.pattern_min, x.sdot, limits, sense);
      if (!spa.valid || !spa.optimal) ok3 = false;
      worst = std::max(worst, std::abs(spa.sddot - lp.sddot));
    }
  }
  ok3 = ok3 && worst < 1e-8;
  Report(3, ok3,
         Fmt("spa vs lp at %zu feasible samples, max and min, max |diff| %.2e",
             samples.size(), worst));
  return min_bounds;
}

void CheckPolygon(const PathDynamics& dyn) {
  const TorqueLimits& limits = dyn.limits();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0, worst_res = 0.0;
  int min_true = 1 << 20, min_clip = 1 << 20;
  long vertices = 0;
  bool ok = true;
  int done = 0;
  while (done < 100) {
    const double s = u(rng);
    const ReducedPathDynamics rd = dyn.At(s);
    const ConstraintPolygon poly = BuildPolygon(rd, limits);
    if (poly.empty()) continue;
    ++done;
    for (const PolygonVertex& v : poly.vertices) {
      ++vertices;
      const double sdot = std::sqrt(std::max(0.0, v.sdot2));
      if (!WithinLimits(v.tau, limits, 1e-9)) ok = false;
      worst_res = std::max(worst_res, Residual(rd, sdot, v.sddot, v.tau));
      const int n = AtBounds(v.tau, limits, 1e-9);
      (v.clipped ? min_clip : min_true) =
          std::min(v.clipped ? min_clip : min_true, n);
    }
    const double xmax = poly.MaxSdot2();
    for (int k = 0; k < 50; ++k) {
      const double x = xmax * k / 49.0;
      const double sdot = std::sqrt(x);
      const ExtremalAccels ex = ExtremalAcc(poly, sdot);
      const LpExtremum hi = LpExtremalAcc(rd, sdot, AccelSense::kMax, limits);
      const LpExtremum lo = LpExtremalAcc(rd, sdot, AccelSense::kMin, limits);
      worst = std::max({worst, std::abs(ex.sddot_max - hi.sddot),
                        std::abs(ex.sddot_min - lo.sddot)});
    }
  }
  ok = ok && worst < 1e-8 && worst_res < 1e-8 && min_true >= 5 &&
       (min_clip == 1 << 20 || min_clip >= 4);
  Report(4, ok,
         Fmt("polygon vs lp at 100 s x 50 sdot2, max |diff| %.2e; %ld vertices "
             "feasible (residual %.1e), >= %d saturated at line vertices, >= %d "
             "at sdot2-clip vertices",
             worst, vertices, worst_res, min_true,
             min_clip == 1 << 20 ? 0 : min_clip));
}

void CheckZeroInertia(const PathDynamics& dyn) {
  PhasePlaneSolver solver(dyn);
  const std::vector<ZeroInertiaPoint> pts = solver.FindZeroInertia();
  int count = 0;
  double where = -1.0, res = 0.0;
  for (const ZeroInertiaPoint& p : pts) {
    if (!p.feasible || solver.Classify(p) != CriticalKind::kSinkSource) continue;
    ++count;
    where = p.s;
    res = p.residual;
  }
  const bool ok = count == 1 && std::abs(where - 0.8526) <= 0.01 && res < 1e-8;
  Report(6, ok,
         Fmt("%d feasible sink-source zero-inertia point(s), at s %.4f, "
             "residual %.1e",
             count, where, res));
}

void CheckSmoothCritical(const SolutionCurve& sol) {
  double best = -1.0;
  for (const PhasePoint& p : sol.smooth_critical) {
    if (best < 0.0 || std::abs(p.s - 0.2672) < std::abs(best - 0.2672)) {
      best = p.s;
    }
  }
  Report(7, best >= 0.0 && std::abs(best - 0.2672) <= 0.01,
         Fmt("smooth critical point at s %.4f (%zu found)", best,
             sol.smooth_critical.size()));
}

bool CheckValidity(const SolutionCurve& sol, const RobotModel& model,
                   const PathSpec& path, const PathDynamics& dyn, double sdot_i,
                   double sdot_f, const char* name, std::string* detail) {
  const TorqueLimits& limits = dyn.limits();
  bool feasible = true, below = true, alternate = true, ends = true, sat = true;
  double worst_res = 0.0;

  // Stored curve vertices carry the torques that produced them.
  for (const EnvelopePiece& piece : sol.segments) {
    const TrajectorySegment& c = sol.curves[piece.curve];
    const double lo = piece.points.front().s, hi = piece.points.back().s;
    for (const CurvePoint& p : c.points) {
      if (p.s < lo || p.s > hi || p.tau.size() == 0) continue;
      if (!WithinLimits(p.tau, limits, 1e-9)) feasible = false;
      worst_res =
          std::max(worst_res, Residual(dyn.At(p.s), p.sdot, p.sddot, p.tau));
    }
  }
  feasible = feasible && worst_res < 1e-8;

  for (const CurvePoint& p : sol.Envelope()) {
    const ConstraintPolygon poly = BuildPolygon(dyn.At(p.s), limits);
    if (poly.empty() || p.sdot > std::sqrt(poly.MaxSdot2()) * (1.0 + 1e-9)) {
      below = false;
    }
  }
  for (std::size_t i = 1; i < sol.segments.size(); ++i) {
    if (sol.segments[i].sign == sol.segments[i - 1].sign) alternate = false;
  }
  const std::vector<CurvePoint> env = sol.Envelope();
  ends = !env.empty() && std::abs(env.front().sdot - sdot_i) <= 1e-6 &&
         std::abs(env.back().sdot - sdot_f) <= 1e-6;

  const std::vector<TrajectorySample> traj =
      SampleJointTrajectory(sol, model, path, 1e-3);
  int min_sat = 1 << 20;
  for (const TrajectorySample& t : traj) {
    min_sat = std::min(min_sat, t.saturated);
    if (!WithinLimits(t.tau, limits, 1e-9)) feasible = false;
  }
  sat = min_sat >= 4;

  *detail += Fmt(
      "; %s: torque-feasible %s (residual %.1e), below mvc %s, signs "
      "alternate %s, boundary %s, %zu samples with >= %d saturated",
      name, feasible ? "yes" : "no", worst_res, below ? "yes" : "no",
      alternate ? "yes" : "no", ends ? "yes" : "no", traj.size(), min_sat);
  return feasible && below && alternate && ends && sat;
}

void CheckBench(const RobotModel& model, const PathSpec& path) {
  try {
    const BenchReport r = RunBench(model, path, {4.0, 4.0}, {}, 5);
    const double ratio = r.spa.total_seconds / r.baseline.total_seconds;
    Report(9, ratio <= 0.60 && r.envelope_deviation <= 1e-6,
           Fmt("spa %.3f s vs baseline %.3f s (median of 5), %.1f%% "
               "reduction, envelope deviation %.1e",
               r.spa.total_seconds, r.baseline.total_seconds,
               100.0 * (1.0 - ratio), r.envelope_deviation));
  } catch (const Error& e) {
    Report(9, false, std::string("benchmark failed: ") + e.what());
  }
}

void CheckStepSize(const RobotModel& model, const PathSpec& path,
                   const SolutionCurve& coarse) {
  SolveOptions fine;
  fine.dt = 5e-4;
  const SolutionCurve sol = Solve(model, path, {4.0, 4.0}, fine);
  bool ok = sol.switch_points.size() == coarse.switch_points.size();
  double ds = 0.0;
  if (ok) {
    for (std::size_t i = 0; i < sol.switch_points.size(); ++i) {
      ds = std::max(ds, std::abs(sol.switch_points[i].location.s -
                                 coarse.switch_points[i].location.s));
    }
  }
  const double dg = std::abs(sol.gamma - coarse.gamma);
  ok = ok && ds < 2e-3 && dg < 1e-3;
  Report(10, ok,
         Fmt("dt 1 ms -> 0.5 ms: switch s shift %.1e, Gamma shift %.1e", ds,
             dg));
}

}  // namespace

int main() {
  SetLogLevel(LogLevel::kError);
  try {
    const std::unique_ptr<RobotModel> model =
        MakePlanarCmms(PlanarCmmsParams{}, PlanarCmmsDefaultLimits());
    const PathSpec path = Example1Path();
    const ProjectedPath dyn(*model, path);
    const SolutionCurve sol = Solve(*model, path, {4.0, 4.0});

    CheckExampleOne(sol);
    CheckCircle(*model);
    const int min_bounds = CheckSpaAndLp(dyn);
    CheckPolygon(dyn);
    Report(5, min_bounds >= 4,
           Fmt("lp optima at the same samples have >= %d actuators at bounds",
               min_bounds));
    CheckZeroInertia(dyn);
    CheckSmoothCritical(sol);

    std::string detail;
    bool valid =
        CheckValidity(sol, *model, path, dyn, 4.0, 4.0, "example I", &detail);
    const PathSpec circle = Example1CirclePath();
    const ProjectedPath circle_dyn(*model, circle);
    const SolutionCurve circle_sol = Solve(*model, circle, {0.0, 0.0});
    valid = CheckValidity(circle_sol, *model, circle, circle_dyn, 0.0, 0.0,
                          "circle", &detail) && valid;
    Report(8, valid, "solution validity" + detail);

    CheckBench(*model, path);
    CheckStepSize(*model, path, sol);
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance run aborted: %s\n", e.what());
    return 1;
  }
  return failures == 0 ? 0 : 1;
}
