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

#include "topp/phaseplane.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "topp/error.hpp"
#include "topp/log.hpp"
#include "topp/lp.hpp"

namespace topp {
namespace {

using Clock = std::chrono::steady_clock;

// Start points may sit on the MVC up to round-off in its construction;
// integration stages may not.
constexpr double kMvcClampRel = 1e-9;
constexpr double kStageClampRel = 1e-12;
constexpr double kOnMvcRel = 1e-4;
constexpr double kZeroInertiaResidual = 1e-8;
constexpr double kKprimeStep = 1e-5;
constexpr double kCriticalWidth = 1e-9;
constexpr double kTiny = 1e-12;
constexpr double kSingularOffset = 1e-5;

class ScopedTimer {
 public:
  explicit ScopedTimer(double* acc) : acc_(acc), t0_(Clock::now()) {}
  ~ScopedTimer() {
    *acc_ += std::chrono::duration<double>(Clock::now() - t0_).count();
  }
  ScopedTimer(const ScopedTimer&) = delete;
  ScopedTimer& operator=(const ScopedTimer&) = delete;

 private:
  double* acc_;
  Clock::time_point t0_;
};

std::vector<std::vector<int>> Subsets(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    out.push_back(pick);
    int i = k - 1;
    while (i >= 0 && pick[i] == m - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

// Index bracketing s in a polyline monotone in s (either direction).
std::size_t Bracket(const std::vector<CurvePoint>& p, double s) {
  const bool asc = p.back().s >= p.front().s;
  std::size_t lo = 0, hi = p.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if ((p[mid].s <= s) == asc) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

template <typename Get>
double InterpolateAt(const std::vector<CurvePoint>& p, double s, Get get) {
  if (p.size() == 1) return get(p[0]);
  const std::size_t i = Bracket(p, s);
  const CurvePoint& a = p[i];
  const CurvePoint& b = p[i + 1];
  if (b.s == a.s) return get(a);
  const double t = std::clamp((s - a.s) / (b.s - a.s), 0.0, 1.0);
  return get(a) + t * (get(b) - get(a));
}

// Intersection of segments a-b and c-d in the (s, sdot) plane.
bool SegmentIntersect(double ax, double ay, double bx, double by, double cx,
                      double cy, double dx, double dy, double* t, double* u) {
  const double rx = bx - ax, ry = by - ay;
  const double qx = dx - cx, qy = dy - cy;
  const double denom = rx * qy - ry * qx;
  if (denom == 0.0) return false;
  const double wx = cx - ax, wy = cy - ay;
  *t = (wx * qy - wy * qx) / denom;
  *u = (wx * ry - wy * rx) / denom;
  // Endpoint slack is absolute in the phase plane so that very short
  // segments still meet an end point placed on the other segment.
  constexpr double kEdge = 1e-12;
  const double et = kEdge * std::max(1.0, 1.0 / std::hypot(rx, ry));
  const double eu = kEdge * std::max(1.0, 1.0 / std::hypot(qx, qy));
  return *t >= -et && *t <= 1.0 + et && *u >= -eu && *u <= 1.0 + eu;
}

// First crossing of chord p0-p1 with polyline `curve`, as chord parameter.
bool ChordHitsCurve(const PhasePoint& p0, const PhasePoint& p1,
                    const TrajectorySegment& curve, double t_min, double* t) {
  const auto& pts = curve.points;
  if (pts.size() < 2) return false;
  const double lo = std::min(p0.s, p1.s);
  const double hi = std::max(p0.s, p1.s);
  if (hi < curve.s_lo() || lo > curve.s_hi()) return false;
  std::size_t i0 = Bracket(pts, lo);
  std::size_t i1 = Bracket(pts, hi);
  if (i0 > i1) std::swap(i0, i1);
  i0 = i0 > 0 ? i0 - 1 : 0;
  i1 = std::min(i1 + 1, pts.size() - 2);
  bool found = false;
  for (std::size_t i = i0; i <= i1; ++i) {
    double tc, uc;
    if (SegmentIntersect(p0.s, p0.sdot, p1.s, p1.sdot, pts[i].s, pts[i].sdot,
                         pts[i + 1].s, pts[i + 1].sdot, &tc, &uc) &&
        tc > t_min && (!found || tc < *t)) {
      *t = std::clamp(tc, 0.0, 1.0);
      found = true;
    }
  }
  return found;
}

std::vector<CurvePoint> Ascending(const TrajectorySegment& c) {
  std::vector<CurvePoint> p = c.points;
  if (p.size() > 1 && p.back().s < p.front().s) std::reverse(p.begin(), p.end());
  return p;
}

bool IsDeadEnd(Termination t) {
  return t == Termination::kEnteredNfr || t == Termination::kSdotZero ||
         t == Termination::kStepLimit;
}

// Exact for sdot^2 linear in s over the cell (constant sddot), which also
// covers cells that start or end at rest.
double CellTime(double ds, double v0, double v1, bool edge_ok) {
  if (ds <= 0.0) return 0.0;
  if ((v0 <= kTiny || v1 <= kTiny) &&
      ((v0 <= kTiny && v1 <= kTiny) || !edge_ok)) {
    throw Error(ErrorCode::kDivergentTime,
                "sdot vanishes inside the path; traversal time diverges");
  }
  return 2.0 * ds / (v0 + v1);
}

// Point of a near-vertical polygon edge at sdot2 with the given sddot,
// snapped to the nearer end when sddot overshoots it slightly. Returns false
// if no such edge is close to sddot.
bool EdgePoint(const ConstraintPolygon& poly, double sdot2, double* sddot,
               double* edge_sdot2, Vec* tau) {
  const double snap = 1e-4 * std::max(1.0, std::abs(*sddot));
  const double tol = 1e-6 * std::max(1.0, sdot2);
  const std::size_t n = poly.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const PolygonVertex& a = poly.vertices[i];
    const PolygonVertex& b = poly.vertices[(i + 1) % n];
    if (std::abs(a.sdot2 - sdot2) > tol || std::abs(b.sdot2 - sdot2) > tol) {
      continue;
    }
    const double lo = std::min(a.sddot, b.sddot), hi = std::max(a.sddot, b.sddot);
    if (*sddot < lo - snap || *sddot > hi + snap || hi <= lo) continue;
    *sddot = std::clamp(*sddot, lo, hi);
    const double w = (*sddot - a.sddot) / (b.sddot - a.sddot);
    *edge_sdot2 = (1.0 - w) * a.sdot2 + w * b.sdot2;
    *tau = (1.0 - w) * a.tau + w * b.tau;
    return true;
  }
  return false;
}

}  // namespace

const char* ToString(Termination t) {
  switch (t) {
    case Termination::kCrossedS0:
      return "crossed_s0";
    case Termination::kCrossedS1:
      return "crossed_s1";
    case Termination::kEnteredNfr:
      return "entered_nfr";
    case Termination::kHitExistingCurve:
      return "hit_existing_curve";
    case Termination::kSdotZero:
      return "sdot_zero";
    case Termination::kStepLimit:
      return "step_limit";
  }
  return "?";
}

const char* ToString(SwitchKind k) {
  switch (k) {
    case SwitchKind::kCurveIntersection:
      return "curve_intersection";
    case SwitchKind::kZeroInertia:
      return "zero_inertia";
    case SwitchKind::kSmoothCritical:
      return "smooth_critical";
  }
  return "?";
}

const char* ToString(ProcedureKind k) {
  switch (k) {
    case ProcedureKind::kDirect:
      return "direct";
    case ProcedureKind::kSemiDirect:
      return "semi_direct";
    case ProcedureKind::kIndirect:
      return "indirect";
  }
  return "?";
}

const char* ToString(CriticalKind k) {
  switch (k) {
    case CriticalKind::kSinkSource:
      return "sink_source";
    case CriticalKind::kSourceSink:
      return "source_sink";
    case CriticalKind::kSinkSink:
      return "sink_sink";
    case CriticalKind::kSourceSource:
      return "source_source";
    case CriticalKind::kNotOnBoundary:
      return "not_on_boundary";
    case CriticalKind::kUnclassified:
      return "unclassified";
  }
  return "?";
}

double TrajectorySegment::s_lo() const {
  return std::min(points.front().s, points.back().s);
}

double TrajectorySegment::s_hi() const {
  return std::max(points.front().s, points.back().s);
}

bool TrajectorySegment::Covers(double s) const {
  return !points.empty() && s >= s_lo() && s <= s_hi();
}

double TrajectorySegment::SdotAt(double s) const {
  return InterpolateAt(points, s, [](const CurvePoint& p) { return p.sdot; });
}

double TrajectorySegment::SddotAt(double s) const {
  return InterpolateAt(points, s, [](const CurvePoint& p) { return p.sddot; });
}

void SolveOptions::Validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorCode::kInvalidParameter, "dt must be positive");
  }
  if (mvc_samples_per_unit < 10) {
    throw Error(ErrorCode::kInvalidParameter,
                "MVC sampling needs at least 10 samples per unit");
  }
  if (zero_inertia_grid < 10) {
    throw Error(ErrorCode::kInvalidParameter,
                "zero-inertia grid needs at least 10 samples");
  }
  if (probe_steps < 1 || max_steps < 1 || max_step_halvings < 1) {
    throw Error(ErrorCode::kInvalidParameter, "step counts must be positive");
  }
  if (!(polygon.sdot2_cap > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "sdot2 cap must be positive");
  }
}

std::vector<CurvePoint> SolutionCurve::Envelope() const {
  std::vector<CurvePoint> out;
  for (const EnvelopePiece& piece : segments) {
    for (const CurvePoint& p : piece.points) {
      if (!out.empty() && std::abs(out.back().s - p.s) <= kTiny &&
          std::abs(out.back().sdot - p.sdot) <= 1e-9) {
        continue;
      }
      out.push_back(p);
    }
  }
  return out;
}

SpaResult SpaStep(const ReducedPathDynamics& rd,
                  const SaturationPattern& pattern, double sdot,
                  const TorqueLimits& limits, AccelSense sense) {
  SpaResult r;
  try {
    const PatternSolution sol = SolvePattern(rd, sdot, pattern, limits, sense);
    r.sddot = sol.sddot;
    r.tau = sol.tau;
    r.valid = sol.within_bounds;
    r.optimal = sol.optimal;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSingularPattern) throw;
  }
  return r;
}

PhasePlaneSolver::PhasePlaneSolver(const PathDynamics& dynamics,
                                   SolveOptions options)
    : dyn_(dynamics), options_(std::move(options)) {
  options_.Validate();
}

std::optional<PhasePlaneSolver::Accel> PhasePlaneSolver::Evaluate(
    double s, double sdot, AccelSense sense,
    std::optional<SaturationPattern>& pattern) {
  return Evaluate(s, sdot, sense, pattern, kMvcClampRel);
}

std::optional<PhasePlaneSolver::Accel> PhasePlaneSolver::Evaluate(
    double s, double sdot, AccelSense sense,
    std::optional<SaturationPattern>& pattern, double clamp_rel) {
  s = std::clamp(s, 0.0, 1.0);
  sdot = std::abs(sdot);
  const ReducedPathDynamics rd = dyn_.At(s);
  const TorqueLimits& limits = dyn_.limits();

  if (options_.method == IntegrationMethod::kLpEveryStep) {
    ++stats_.lp_calls;
    try {
      const LpExtremum r = LpExtremalAcc(rd, sdot, sense, limits);
      return Accel{r.sddot, r.tau};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInfeasibleLp) throw;
    }
    ++stats_.lp_calls;
    const std::optional<double> xmax = LpMaxSdot2(rd, limits);
    if (!xmax || sdot * sdot > *xmax * (1.0 + clamp_rel)) {
      return std::nullopt;
    }
    ++stats_.lp_calls;
    try {
      const LpExtremum r = LpExtremalAcc(rd, std::sqrt(*xmax), sense, limits);
      return Accel{r.sddot, r.tau};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInfeasibleLp) throw;
      return std::nullopt;
    }
  }

  if (pattern) {
    ++stats_.spa_solves;
    SpaResult r = SpaStep(rd, *pattern, sdot, limits, sense);
    if (r.valid && r.optimal) return Accel{r.sddot, std::move(r.tau)};
  }
  // Pattern changed or unknown: identify it from the polygon.
  ++stats_.refresh_polygon_builds;
  const ConstraintPolygon poly = BuildPolygon(rd, limits, options_.polygon);
  if (poly.empty()) return std::nullopt;
  const double xmax = poly.MaxSdot2();
  if (sdot * sdot > xmax) {
    if (sdot * sdot > xmax * (1.0 + clamp_rel)) return std::nullopt;
    sdot = std::sqrt(xmax);
  }
  const ExtremalAccels ex = ExtremalAcc(poly, sdot);
  const bool has =
      sense == AccelSense::kMax ? ex.has_pattern_max : ex.has_pattern_min;
  if (has) {
    pattern = sense == AccelSense::kMax ? ex.pattern_max : ex.pattern_min;
    ++stats_.spa_solves;
    SpaResult r = SpaStep(rd, *pattern, sdot, limits, sense);
    if (r.valid) return Accel{r.sddot, std::move(r.tau)};
  }
  pattern.reset();
  ++stats_.lp_calls;
  try {
    const LpExtremum r = LpExtremalAcc(rd, sdot, sense, limits);
    if (r.has_pattern) pattern = r.pattern;
    return Accel{r.sddot, r.tau};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInfeasibleLp) throw;
    return std::nullopt;
  }
}

TrajectorySegment PhasePlaneSolver::Integrate(
    PhasePoint start, Direction direction, AccelSense sense,
    std::span<const TrajectorySegment> existing, int origin,
    IntegrateOptions opts) {
  TrajectorySegment seg;
  seg.direction = direction;
  seg.sense = sense;
  seg.origin = origin;
  const long max_steps = opts.max_steps < 0 ? options_.max_steps
                                            : opts.max_steps;
  const double h =
      direction == Direction::kForward ? options_.dt : -options_.dt;

  if (opts.singular_start) {
    // The extremal acceleration jumps across a zero-inertia point; use the
    // limit from the side being integrated into.
    seg.points.push_back({start.s, start.sdot, 0.0, Vec()});
    const double s1 = std::clamp(
        start.s + (h > 0.0 ? kSingularOffset : -kSingularOffset), 0.0, 1.0);
    start = {s1, std::min(start.sdot, MvcAt(s1))};
  }

  std::optional<SaturationPattern> pattern;
  std::optional<Accel> a0 = Evaluate(start.s, start.sdot, sense, pattern);
  if (!a0) {
    if (seg.points.empty()) seg.points.push_back({start.s, start.sdot, 0.0, Vec()});
    seg.termination = Termination::kEnteredNfr;
    return seg;
  }
  if (!seg.points.empty()) {
    CurvePoint& first = seg.points.front();
    first.sddot = a0->sddot;
    first.tau = a0->tau;
    ++stats_.check_polygon_builds;
    const ConstraintPolygon poly =
        BuildPolygon(dyn_.At(first.s), dyn_.limits(), options_.polygon);
    double x = 0.0;
    if (EdgePoint(poly, first.sdot * first.sdot, &first.sddot, &x,
                  &first.tau)) {
      first.sdot = std::sqrt(x);
    }
  }
  seg.points.push_back({start.s, start.sdot, a0->sddot, a0->tau});
  if (pattern) {
    seg.pattern_history.emplace_back(static_cast<int>(seg.points.size()) - 1,
                                     *pattern);
  }

  struct StepResult {
    bool ok = false;
    double s = 0.0;
    double sdot = 0.0;
    std::optional<Accel> accel;  // at the step end when inside [0, 1]
    std::optional<SaturationPattern> pattern;
  };
  auto try_step = [&](double s0, double v0, double acc0, double hh,
                      std::optional<SaturationPattern> pat) {
    StepResult r;
    const double s2 = s0 + 0.5 * hh * v0;
    const double v2 = v0 + 0.5 * hh * acc0;
    const std::optional<Accel> k2 = Evaluate(s2, v2, sense, pat, kStageClampRel);
    if (!k2) return r;
    const double s3 = s0 + 0.5 * hh * v2;
    const double v3 = v0 + 0.5 * hh * k2->sddot;
    const std::optional<Accel> k3 = Evaluate(s3, v3, sense, pat, kStageClampRel);
    if (!k3) return r;
    const double s4 = s0 + hh * v3;
    const double v4 = v0 + hh * k3->sddot;
    const std::optional<Accel> k4 = Evaluate(s4, v4, sense, pat, kStageClampRel);
    if (!k4) return r;
    r.s = s0 + hh / 6.0 * (v0 + 2.0 * v2 + 2.0 * v3 + v4);
    r.sdot = v0 + hh / 6.0 *
                      (acc0 + 2.0 * k2->sddot + 2.0 * k3->sddot + k4->sddot);
    if (r.sdot > 0.0 && r.s >= 0.0 && r.s <= 1.0) {
      r.accel = Evaluate(r.s, r.sdot, sense, pat, kStageClampRel);
      if (!r.accel) return r;
    }
    r.ok = true;
    r.pattern = std::move(pat);
    return r;
  };

  // Step fraction of dt. Infeasible stages halve it; it recovers by
  // doubling after each accepted step. Failure at the smallest fraction
  // is an NFR entry.
  const double min_fraction = std::ldexp(1.0, -options_.max_step_halvings);
  double fraction = 1.0;
  seg.termination = Termination::kStepLimit;
  for (long step = 0; step < max_steps; ++step) {
    ++stats_.steps;
    const CurvePoint& cur = seg.points.back();
    StepResult r = try_step(cur.s, cur.sdot, cur.sddot, h * fraction, pattern);
    while (!r.ok && fraction > min_fraction) {
      fraction *= 0.5;
      r = try_step(cur.s, cur.sdot, cur.sddot, h * fraction, pattern);
    }
    if (!r.ok) {
      seg.termination = Termination::kEnteredNfr;
      break;
    }

    const PhasePoint p0{cur.s, cur.sdot};
    const PhasePoint p1{r.s, r.sdot};
    double t_event = 2.0;
    Termination event = Termination::kStepLimit;
    int hit = -1;
    if (p1.sdot <= 0.0) {
      t_event = p0.sdot / (p0.sdot - p1.sdot);
      event = Termination::kSdotZero;
    }
    if (p1.s > 1.0 || p1.s < 0.0) {
      const double bound = p1.s > 1.0 ? 1.0 : 0.0;
      const double t = (bound - p0.s) / (p1.s - p0.s);
      if (t < t_event) {
        t_event = t;
        event = p1.s > 1.0 ? Termination::kCrossedS1 : Termination::kCrossedS0;
      }
    }
    for (const TrajectorySegment& other : existing) {
      if (other.sense == sense) continue;
      if (origin >= 0 && other.origin == origin) continue;
      double t = 0.0;
      if (ChordHitsCurve(p0, p1, other, step == 0 ? kTiny : -1.0, &t) &&
          t < t_event) {
        t_event = t;
        event = Termination::kHitExistingCurve;
        hit = other.id;
      }
    }
    if (t_event <= 1.0) {
      CurvePoint ev;
      ev.s = std::clamp(p0.s + t_event * (p1.s - p0.s), 0.0, 1.0);
      ev.sdot = std::max(0.0, p0.sdot + t_event * (p1.sdot - p0.sdot));
      std::optional<SaturationPattern> pat = r.pattern;
      if (std::optional<Accel> a = Evaluate(ev.s, ev.sdot, sense, pat)) {
        ev.sddot = a->sddot;
        ev.tau = std::move(a->tau);
      } else {
        ev.sddot = cur.sddot;
        ev.tau = cur.tau;
      }
      seg.points.push_back(std::move(ev));
      seg.termination = event;
      seg.hit_curve = hit;
      break;
    }
    seg.points.push_back({r.s, r.sdot, r.accel->sddot, r.accel->tau});
    pattern = std::move(r.pattern);
    if (pattern && (seg.pattern_history.empty() ||
                    seg.pattern_history.back().second != *pattern)) {
      seg.pattern_history.emplace_back(
          static_cast<int>(seg.points.size()) - 1, *pattern);
    }
    fraction = std::min(1.0, 2.0 * fraction);
  }
  return seg;
}

PhasePlaneSolver::Sample PhasePlaneSolver::MvcPoint(double s, long* counter) {
  ++*counter;
  const ReducedPathDynamics rd = dyn_.At(std::clamp(s, 0.0, 1.0));
  const ConstraintPolygon poly =
      BuildPolygon(rd, dyn_.limits(), options_.polygon);
  if (poly.empty()) {
    throw Error(ErrorCode::kEmptyPolygon,
                "path is infeasible at s=" + std::to_string(s) +
                    " even at rest");
  }
  const MvcValue v = MvcVelocity(poly);
  const ExtremalAccels ex = ExtremalAcc(poly, v.sdot);
  return {v.sdot, ex.sddot_max, v.capped};
}

double PhasePlaneSolver::MvcAt(double s) {
  return MvcPoint(s, &stats_.check_polygon_builds).sdot;
}

std::vector<ZeroInertiaPoint> PhasePlaneSolver::FindZeroInertia() {
  const int n = options_.zero_inertia_grid;
  const ReducedPathDynamics probe = dyn_.At(0.0);
  const int k = probe.rows();
  const int m = probe.actuators();
  const TorqueLimits& limits = dyn_.limits();
  const std::vector<std::vector<int>> free_sets = Subsets(m, k - 1);

  // Normalized det[c, B_F]; vanishes exactly where c lies in span(B_F),
  // i.e. where the row of the remaining basis column has zero inertia.
  auto spread = [&](const ReducedPathDynamics& rd, const std::vector<int>& f) {
    SmallMat a(k, k);
    a.col(0) = rd.c;
    double scale = rd.c.norm();
    for (int i = 0; i < k - 1; ++i) {
      a.col(i + 1) = rd.B.col(f[i]);
      scale *= a.col(i + 1).norm();
    }
    return scale > 0.0 ? a.determinant() / scale : 0.0;
  };
  // Dependent free columns make the determinant vanish identically.
  auto independent = [&](const ReducedPathDynamics& rd,
                         const std::vector<int>& f) {
    SmallMat bf(k, k - 1);
    double scale = 1.0;
    for (int i = 0; i < k - 1; ++i) {
      bf.col(i) = rd.B.col(f[i]);
      scale *= bf.col(i).squaredNorm();
    }
    if (k == 1) return true;
    const double gram = (bf.transpose() * bf).determinant();
    return scale > 0.0 && gram > 1e-16 * scale;
  };
  auto best_basis = [&](const ReducedPathDynamics& rd,
                        const std::vector<int>& f, int* row_actuator) {
    double best = -1.0;
    std::vector<int> basis;
    for (int l = 0; l < m; ++l) {
      if (std::find(f.begin(), f.end(), l) != f.end()) continue;
      std::vector<int> cand = f;
      cand.push_back(l);
      std::sort(cand.begin(), cand.end());
      SmallMat ba(k, k);
      double scale = 1.0;
      for (int i = 0; i < k; ++i) {
        ba.col(i) = rd.B.col(cand[i]);
        scale *= ba.col(i).norm();
      }
      const double score = scale > 0.0 ? std::abs(ba.determinant()) / scale
                                       : 0.0;
      if (score > best && score > 1e-10) {
        best = score;
        basis = cand;
        *row_actuator = l;
      }
    }
    return basis;
  };

  std::vector<ReducedPathDynamics> grid(n + 1);
  for (int j = 0; j <= n; ++j) grid[j] = dyn_.At(static_cast<double>(j) / n);

  std::vector<ZeroInertiaPoint> out;
  for (const std::vector<int>& f : free_sets) {
    std::vector<double> vals(n + 1);
    for (int j = 0; j <= n; ++j) vals[j] = spread(grid[j], f);
    for (int j = 0; j < n; ++j) {
      const bool exact = vals[j] == 0.0;
      if (!exact && !(vals[j] * vals[j + 1] < 0.0)) continue;
      if (!independent(grid[j], f)) continue;
      double lo = static_cast<double>(j) / n;
      double hi = static_cast<double>(j + 1) / n;
      double flo = vals[j];
      int row_actuator = -1;
      const std::vector<int> basis =
          best_basis(dyn_.At(0.5 * (lo + hi)), f, &row_actuator);
      if (basis.empty()) continue;
      const int row = static_cast<int>(
          std::find(basis.begin(), basis.end(), row_actuator) - basis.begin());
      double s_root = lo;
      double residual = std::numeric_limits<double>::infinity();
      NormalizedDynamics nd;
      ReducedPathDynamics rd;
      for (int it = 0; it < 200; ++it) {
        const double mid = exact ? lo : 0.5 * (lo + hi);
        rd = dyn_.At(mid);
        nd = Normalize(rd, basis);
        residual = std::abs(nd.cbar[row]);
        s_root = mid;
        if (residual < kZeroInertiaResidual || exact) break;
        const double fm = spread(rd, f);
        if (fm == 0.0) break;
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
        if (hi - lo < 1e-15) break;
      }
      ZeroInertiaPoint pt;
      pt.s = s_root;
      pt.free_set = f;
      pt.row_actuator = row_actuator;
      pt.residual = residual;

      // Velocity limit of the vanishing row:
      // dbar_i * sdot^2 = tau_l - ebar_i + Bbar_i . tau_b.
      double bmin = 0.0, bmax = 0.0;
      for (std::size_t c = 0; c < nd.complement.size(); ++c) {
        const int j2 = nd.complement[c];
        const double a = nd.Bbar(row, c) * limits.tau_min[j2];
        const double b = nd.Bbar(row, c) * limits.tau_max[j2];
        bmin += std::min(a, b);
        bmax += std::max(a, b);
      }
      const double dbar = nd.dbar[row];
      const double ebar = nd.ebar[row];
      double upper = std::numeric_limits<double>::infinity();
      if (std::abs(dbar) > 1e-12) {
        upper = dbar > 0.0
                    ? (limits.tau_max[row_actuator] + bmax - ebar) / dbar
                    : (limits.tau_min[row_actuator] + bmin - ebar) / dbar;
      }
      if (std::isfinite(upper) && upper > 0.0) {
        ++stats_.check_polygon_builds;
        const ConstraintPolygon poly =
            BuildPolygon(rd, limits, options_.polygon);
        if (!poly.empty()) {
          const double xmax = poly.MaxSdot2();
          pt.feasible = xmax >= upper * (1.0 - 1e-6) && !poly.capped();
          pt.sdot = std::sqrt(std::min(upper, xmax));
        }
      }
      Log(LogLevel::kDebug,
          "zero-inertia candidate s=%.6f free={%d,%d} residual=%.2e "
          "sdot=%.4f feasible=%d",
          pt.s, f.empty() ? -1 : f[0], f.size() > 1 ? f[1] : -1, pt.residual,
          pt.sdot, pt.feasible ? 1 : 0);
      out.push_back(std::move(pt));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ZeroInertiaPoint& a, const ZeroInertiaPoint& b) {
              return a.s < b.s;
            });
  return out;
}

CriticalKind PhasePlaneSolver::Classify(const ZeroInertiaPoint& pt) {
  if (!pt.feasible) return CriticalKind::kUnclassified;
  IntegrateOptions probe;
  probe.max_steps = options_.probe_steps;
  probe.singular_start = true;
  const PhasePoint start{pt.s, pt.sdot};
  const TrajectorySegment fwd =
      Integrate(start, Direction::kForward, AccelSense::kMax, {}, -1, probe);
  const TrajectorySegment bwd =
      Integrate(start, Direction::kBackward, AccelSense::kMin, {}, -1, probe);
  const bool fwd_fail = fwd.termination == Termination::kEnteredNfr;
  const bool bwd_fail = bwd.termination == Termination::kEnteredNfr;
  if (fwd_fail && bwd_fail) return CriticalKind::kSourceSink;
  if (fwd_fail) return CriticalKind::kSinkSink;
  if (bwd_fail) return CriticalKind::kSourceSource;
  const double mvc = MvcAt(pt.s);
  if (std::abs(pt.sdot - mvc) <= kOnMvcRel * mvc) {
    return CriticalKind::kSinkSource;
  }
  return CriticalKind::kNotOnBoundary;
}

MvcSegment PhasePlaneSolver::ConstructMvc(double s_lo, double s_hi) {
  ScopedTimer timer(&stats_.mvc_seconds);
  s_lo = std::clamp(s_lo, 0.0, 1.0);
  s_hi = std::clamp(s_hi, 0.0, 1.0);
  if (!(s_hi > s_lo)) {
    throw Error(ErrorCode::kInvalidArgument, "empty MVC interval");
  }
  MvcSegment seg;
  seg.s_lo = s_lo;
  seg.s_hi = s_hi;
  if (!full_mvc_.empty()) {
    for (const MvcSample& smp : full_mvc_) {
      if (smp.s >= s_lo - kTiny && smp.s <= s_hi + kTiny) {
        seg.samples.push_back(smp);
      }
    }
    if (seg.samples.size() >= 2) return seg;
    seg.samples.clear();
  }
  const double len = s_hi - s_lo;
  const int n = std::max(
      2, static_cast<int>(std::ceil(options_.mvc_samples_per_unit * len - 1e-9)));
  seg.samples.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double s = j == n ? s_hi : s_lo + len * j / n;
    const Sample smp = MvcPoint(s, &stats_.mvc_polygon_builds);
    seg.samples[j] = {s, smp.sdot, smp.sddot, 0.0, smp.capped};
  }
  for (int j = 0; j <= n; ++j) {
    const int a = std::max(0, j - 1);
    const int b = std::min(n, j + 1);
    seg.samples[j].kprime = (seg.samples[b].sdot - seg.samples[a].sdot) /
                            (seg.samples[b].s - seg.samples[a].s);
  }
  return seg;
}

double PhasePlaneSolver::Phi(double s) {
  const double h = kKprimeStep;
  const double a = std::max(0.0, s - h);
  const double b = std::min(1.0, s + h);
  const Sample mid = MvcPoint(s, &stats_.mvc_polygon_builds);
  const double kprime = (MvcPoint(b, &stats_.mvc_polygon_builds).sdot -
                         MvcPoint(a, &stats_.mvc_polygon_builds).sdot) /
                        (b - a);
  return kprime - mid.sddot / mid.sdot;
}

std::vector<PhasePoint> PhasePlaneSolver::FindSmoothCritical(
    const MvcSegment& mvc) {
  ScopedTimer timer(&stats_.mvc_seconds);
  std::vector<PhasePoint> out;
  const auto& smp = mvc.samples;
  auto phi = [](const MvcSample& x) {
    return x.sdot > kTiny ? x.kprime - x.sddot / x.sdot
                          : std::numeric_limits<double>::quiet_NaN();
  };
  for (std::size_t j = 0; j + 1 < smp.size(); ++j) {
    const double p0 = phi(smp[j]);
    const double p1 = phi(smp[j + 1]);
    if (!(p0 < 0.0 && p1 > 0.0)) continue;
    double lo = smp[j].s, hi = smp[j + 1].s;
    while (hi - lo > kCriticalWidth) {
      const double mid = 0.5 * (lo + hi);
      if (Phi(mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double s = 0.5 * (lo + hi);
    const double sdot = MvcPoint(s, &stats_.mvc_polygon_builds).sdot;
    Log(LogLevel::kDebug, "smooth critical point s=%.6f sdot=%.4f", s, sdot);
    out.push_back({s, sdot});
  }
  return out;
}

namespace {

struct Gap {
  double lo;
  double hi;
};

bool Dominated(const PhasePoint& p, const std::vector<TrajectorySegment>& curves) {
  for (const TrajectorySegment& g : curves) {
    if (!g.Covers(p.s)) continue;
    if (p.sdot >= g.SdotAt(p.s) - 1e-9 * std::max(1.0, p.sdot)) return true;
  }
  return false;
}

std::vector<Gap> ComputeGaps(const std::vector<TrajectorySegment>& curves) {
  struct End {
    double s;
    bool left;  // the gap opens to the right of this end
  };
  std::vector<End> ends;
  for (const TrajectorySegment& c : curves) {
    if (!IsDeadEnd(c.termination)) continue;
    const CurvePoint& e = c.points.back();
    const bool left = c.direction == Direction::kForward;
    bool resolved = false;
    for (const TrajectorySegment& g : curves) {
      if (g.id == c.id || !g.Covers(e.s)) continue;
      const bool extends = left ? g.s_hi() > e.s + kTiny : g.s_lo() < e.s - kTiny;
      if (extends && g.SdotAt(e.s) < e.sdot - 1e-9 * std::max(1.0, e.sdot)) {
        resolved = true;
        break;
      }
    }
    if (!resolved) ends.push_back({e.s, left});
  }
  std::vector<Gap> gaps;
  for (const End& l : ends) {
    if (!l.left) continue;
    double hi = 1.0;
    for (const End& r : ends) {
      if (!r.left && r.s > l.s) hi = std::min(hi, r.s);
    }
    gaps.push_back({l.s, hi});
  }
  for (const End& r : ends) {
    if (r.left) continue;
    bool paired = false;
    for (const End& l : ends) paired |= l.left && l.s < r.s;
    if (!paired) gaps.push_back({0.0, r.s});
  }
  std::sort(gaps.begin(), gaps.end(),
            [](const Gap& a, const Gap& b) { return a.lo < b.lo; });
  return gaps;
}

struct Origin {
  SwitchKind kind;
  PhasePoint point;
};

void AssembleEnvelope(const std::vector<TrajectorySegment>& curves,
                      const std::vector<Origin>& origins, SolutionCurve* sol) {
  std::vector<const TrajectorySegment*> usable;
  for (const TrajectorySegment& c : curves) {
    if (c.points.size() >= 2 && c.s_hi() > c.s_lo()) usable.push_back(&c);
  }
  std::vector<double> grid{0.0, 1.0};
  for (const TrajectorySegment* c : usable) {
    for (const CurvePoint& p : c->points) grid.push_back(p.s);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return b - a <= kTiny; }),
             grid.end());

  struct Run {
    const TrajectorySegment* curve;
    std::size_t first_cell;
    std::size_t last_cell;
  };
  std::vector<Run> runs;
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    const double mid = 0.5 * (grid[j] + grid[j + 1]);
    const TrajectorySegment* owner = nullptr;
    double best = std::numeric_limits<double>::infinity();
    for (const TrajectorySegment* c : usable) {
      if (!c->Covers(mid)) continue;
      const double v = c->SdotAt(mid);
      if (v < best) {
        best = v;
        owner = c;
      }
    }
    if (owner == nullptr) {
      throw Error(ErrorCode::kNoSolution,
                  "no extremal curve covers s in [" + std::to_string(grid[j]) +
                      ", " + std::to_string(grid[j + 1]) + "]");
    }
    if (!runs.empty() && runs.back().curve == owner) {
      runs.back().last_cell = j;
    } else {
      runs.push_back({owner, j, j});
    }
  }

  // Junction between consecutive runs.
  std::vector<PhasePoint> junctions;
  std::vector<SwitchPoint> switches;
  for (std::size_t r = 0; r + 1 < runs.size(); ++r) {
    const TrajectorySegment& a = *runs[r].curve;
    const TrajectorySegment& b = *runs[r + 1].curve;
    const double g = grid[runs[r + 1].first_cell];
    const double w_lo = grid[runs[r].last_cell];
    const double w_hi = grid[runs[r + 1].first_cell + 1];
    PhasePoint best{g, b.SdotAt(g)};
    bool found = false;
    double best_dist = std::numeric_limits<double>::infinity();
    const auto& pa = a.points;
    const auto& pb = b.points;
    for (std::size_t i = 0; i + 1 < pa.size(); ++i) {
      if (std::max(pa[i].s, pa[i + 1].s) < w_lo - kTiny ||
          std::min(pa[i].s, pa[i + 1].s) > w_hi + kTiny) {
        continue;
      }
      for (std::size_t j = 0; j + 1 < pb.size(); ++j) {
        if (std::max(pb[j].s, pb[j + 1].s) < w_lo - kTiny ||
            std::min(pb[j].s, pb[j + 1].s) > w_hi + kTiny) {
          continue;
        }
        double t, u;
        if (SegmentIntersect(pa[i].s, pa[i].sdot, pa[i + 1].s, pa[i + 1].sdot,
                             pb[j].s, pb[j].sdot, pb[j + 1].s, pb[j + 1].sdot,
                             &t, &u)) {
          const PhasePoint x{pa[i].s + t * (pa[i + 1].s - pa[i].s),
                             pa[i].sdot + t * (pa[i + 1].sdot - pa[i].sdot)};
          if (std::abs(x.s - g) < best_dist) {
            best_dist = std::abs(x.s - g);
            best = x;
            found = true;
          }
        }
      }
    }
    SwitchKind kind = SwitchKind::kCurveIntersection;
    if (a.origin >= 0 && a.origin == b.origin) {
      // Sibling curves meet at their common start.
      best = origins[a.origin].point;
      best.sdot = a.points.front().sdot;
      kind = origins[a.origin].kind;
      found = true;
    }
    if (!found) {
      Log(LogLevel::kError,
          "envelope junction at s=%.6f has no curve intersection", g);
    }
    junctions.push_back(best);
    switches.push_back({best, kind, a.sense, b.sense});
  }

  sol->segments.clear();
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const TrajectorySegment& c = *runs[r].curve;
    const double s0 = r == 0 ? 0.0 : junctions[r - 1].s;
    const double s1 = r + 1 == runs.size() ? 1.0 : junctions[r].s;
    EnvelopePiece piece;
    piece.sign = c.sense;
    piece.curve = c.id;
    const double v0 = r == 0 ? c.SdotAt(s0) : junctions[r - 1].sdot;
    piece.points.push_back({s0, v0, c.SddotAt(s0), Vec()});
    for (const CurvePoint& p : Ascending(c)) {
      if (p.s > s0 + kTiny && p.s < s1 - kTiny) {
        piece.points.push_back({p.s, p.sdot, p.sddot, Vec()});
      }
    }
    const double v1 = r + 1 == runs.size() ? c.SdotAt(s1) : junctions[r].sdot;
    piece.points.push_back({s1, v1, c.SddotAt(s1), Vec()});
    sol->segments.push_back(std::move(piece));
  }
  sol->switch_points = std::move(switches);
}

}  // namespace

SolutionCurve PhasePlaneSolver::Solve(const BoundaryConditions& bc) {
  bc.Validate();
  stats_ = SolveStats{};
  full_mvc_.clear();
  const Clock::time_point t0 = Clock::now();
  SolutionCurve sol;
  sol.boundary = bc;

  if (options_.full_mvc) {
    MvcSegment all = ConstructMvc(0.0, 1.0);
    full_mvc_ = all.samples;
    sol.mvc = full_mvc_;
  }

  std::vector<TrajectorySegment>& curves = sol.curves;
  std::vector<Origin> origins;
  auto add_curve = [&](TrajectorySegment c) {
    c.id = static_cast<int>(curves.size());
    Log(LogLevel::kInfo,
        "curve %d %s/%s from (%.4f, %.4f) to (%.4f, %.4f): %s", c.id,
        c.direction == Direction::kForward ? "forward" : "backward",
        ToString(c.sense), c.points.front().s, c.points.front().sdot,
        c.points.back().s, c.points.back().sdot, ToString(c.termination));
    curves.push_back(std::move(c));
  };

  // Step 1: extremal runs from both boundary states.
  TrajectorySegment f0 = Integrate({0.0, bc.sdot_i}, Direction::kForward,
                                   AccelSense::kMax, curves, -1);
  if (f0.points.size() == 1 && f0.termination == Termination::kEnteredNfr) {
    throw Error(ErrorCode::kInfeasibleBoundary,
                "initial state (0, " + std::to_string(bc.sdot_i) +
                    ") is above the MVC");
  }
  add_curve(std::move(f0));
  TrajectorySegment b0 = Integrate({1.0, bc.sdot_f}, Direction::kBackward,
                                   AccelSense::kMin, curves, -1);
  if (b0.points.size() == 1 && b0.termination == Termination::kEnteredNfr) {
    throw Error(ErrorCode::kInfeasibleBoundary,
                "final state (1, " + std::to_string(bc.sdot_f) +
                    ") is above the MVC");
  }
  add_curve(std::move(b0));

  auto expand = [&](const PhasePoint& p, SwitchKind kind) {
    const int o = static_cast<int>(origins.size());
    origins.push_back({kind, p});
    Log(LogLevel::kInfo, "expanding %s point (%.6f, %.6f)", ToString(kind),
        p.s, p.sdot);
    IntegrateOptions io;
    io.singular_start = kind == SwitchKind::kZeroInertia;
    add_curve(
        Integrate(p, Direction::kBackward, AccelSense::kMin, curves, o, io));
    add_curve(
        Integrate(p, Direction::kForward, AccelSense::kMax, curves, o, io));
  };

  std::vector<Gap> gaps = ComputeGaps(curves);
  if (!gaps.empty()) {
    // Step 2: zero-inertia points and their classification.
    sol.zero_inertia = FindZeroInertia();
    for (ZeroInertiaPoint& z : sol.zero_inertia) z.kind = Classify(z);
  }
  std::vector<bool> zi_done(sol.zero_inertia.size(), false);
  std::vector<PhasePoint> pending;
  std::vector<bool> pending_done;
  std::vector<Gap> sampled;

  for (int iter = 0; !gaps.empty(); ++iter) {
    if (iter > 10000) {
      throw Error(ErrorCode::kNoSolution, "switch-point search did not settle");
    }
    auto in_gap = [&](double s) {
      for (const Gap& g : gaps) {
        if (s > g.lo && s < g.hi) return true;
      }
      return false;
    };

    // Steps 3-5: lowest usable zero-inertia point first.
    int pick = -1;
    for (std::size_t i = 0; i < sol.zero_inertia.size(); ++i) {
      const ZeroInertiaPoint& z = sol.zero_inertia[i];
      if (zi_done[i] || !z.feasible || z.kind != CriticalKind::kSinkSource ||
          !in_gap(z.s)) {
        continue;
      }
      if (Dominated({z.s, z.sdot}, curves)) {
        zi_done[i] = true;
        continue;
      }
      if (pick < 0 || z.sdot < sol.zero_inertia[pick].sdot) {
        pick = static_cast<int>(i);
      }
    }
    if (pick >= 0) {
      zi_done[pick] = true;
      const ZeroInertiaPoint& z = sol.zero_inertia[pick];
      expand({z.s, z.sdot}, SwitchKind::kZeroInertia);
      gaps = ComputeGaps(curves);
      continue;
    }

    // Steps 7-8: smooth critical points already found on sampled MVC.
    pick = -1;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (pending_done[i] || !in_gap(pending[i].s)) continue;
      if (Dominated(pending[i], curves)) {
        pending_done[i] = true;
        continue;
      }
      if (pick < 0 || pending[i].sdot < pending[pick].sdot) {
        pick = static_cast<int>(i);
      }
    }
    if (pick >= 0) {
      pending_done[pick] = true;
      expand(pending[pick], SwitchKind::kSmoothCritical);
      gaps = ComputeGaps(curves);
      continue;
    }

    // Step 6: MVC only on intervals not yet sampled.
    bool built = false;
    for (const Gap& g : gaps) {
      bool covered = false;
      for (const Gap& s : sampled) {
        covered |= g.lo >= s.lo - kTiny && g.hi <= s.hi + kTiny;
      }
      if (covered) continue;
      Log(LogLevel::kInfo, "constructing MVC on [%.6f, %.6f]", g.lo, g.hi);
      MvcSegment seg = ConstructMvc(g.lo, g.hi);
      sampled.push_back(g);
      if (full_mvc_.empty()) {
        sol.mvc.insert(sol.mvc.end(), seg.samples.begin(), seg.samples.end());
      }
      for (const PhasePoint& p : FindSmoothCritical(seg)) {
        bool known = false;
        for (const PhasePoint& q : pending) {
          known |= std::abs(q.s - p.s) < 1e-7;
        }
        if (!known) {
          pending.push_back(p);
          pending_done.push_back(false);
          sol.smooth_critical.push_back(p);
        }
      }
      built = true;
    }
    if (!built) {
      throw Error(ErrorCode::kNoSolution,
                  "no switching point closes the uncovered interval [" +
                      std::to_string(gaps.front().lo) + ", " +
                      std::to_string(gaps.front().hi) + "]");
    }
  }

  AssembleEnvelope(curves, origins, &sol);
  std::sort(sol.mvc.begin(), sol.mvc.end(),
            [](const MvcSample& a, const MvcSample& b) { return a.s < b.s; });

  const std::vector<CurvePoint> env = sol.Envelope();
  if (std::abs(env.front().sdot - bc.sdot_i) > 1e-6) {
    throw Error(ErrorCode::kInfeasibleBoundary,
                "initial velocity cannot be kept below the MVC");
  }
  if (std::abs(env.back().sdot - bc.sdot_f) > 1e-6) {
    throw Error(ErrorCode::kInfeasibleBoundary,
                "final velocity cannot be reached from below the MVC");
  }
  bool has_zi = false, has_sc = false;
  for (const SwitchPoint& sp : sol.switch_points) {
    has_zi |= sp.kind == SwitchKind::kZeroInertia;
    has_sc |= sp.kind == SwitchKind::kSmoothCritical;
  }
  sol.procedure = has_sc ? (has_zi ? ProcedureKind::kSemiDirect
                                   : ProcedureKind::kIndirect)
                         : ProcedureKind::kDirect;
  sol.gamma = TimeOf(env);
  stats_.total_seconds =
      std::chrono::duration<double>(Clock::now() - t0).count();
  sol.stats = stats_;
  return sol;
}

std::vector<MvcSample> SampleMvc(const PathDynamics& dynamics, double s_lo,
                                 double s_hi, int intervals,
                                 const PolygonOptions& polygon) {
  if (intervals < 1 || !(s_lo >= 0.0) || !(s_hi <= 1.0) || !(s_hi > s_lo)) {
    throw Error(ErrorCode::kInvalidArgument,
                "MVC interval must satisfy 0 <= from < to <= 1 with at least "
                "one cell");
  }
  std::vector<MvcSample> out(intervals + 1);
  for (int j = 0; j <= intervals; ++j) {
    const double s =
        j == intervals ? s_hi : s_lo + (s_hi - s_lo) * j / intervals;
    const ConstraintPolygon poly =
        BuildPolygon(dynamics.At(s), dynamics.limits(), polygon);
    if (poly.empty()) {
      throw Error(ErrorCode::kEmptyPolygon,
                  "no feasible torque at s=" + std::to_string(s));
    }
    const MvcValue v = MvcVelocity(poly);
    out[j] = {s, v.sdot, ExtremalAcc(poly, v.sdot).sddot_max, 0.0, v.capped};
  }
  for (int j = 0; j <= intervals; ++j) {
    const int a = std::max(0, j - 1);
    const int b = std::min(intervals, j + 1);
    out[j].kprime = (out[b].sdot - out[a].sdot) / (out[b].s - out[a].s);
  }
  return out;
}

double TimeOf(std::span<const CurvePoint> points) {
  double total = 0.0;
  const std::size_t n = points.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const bool edge_ok = (points[i].sdot > kTiny || i == 0) &&
                         (points[i + 1].sdot > kTiny || i + 2 == n);
    total += CellTime(points[i + 1].s - points[i].s, points[i].sdot,
                      points[i + 1].sdot, edge_ok);
  }
  return total;
}

std::vector<TrajectorySample> SampleJointTrajectory(
    const SolutionCurve& curve, const RobotModel& model, const PathSpec& path,
    double dt, const PolygonOptions& polygon) {
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "dt must be positive");
  }
  struct Cell {
    CurvePoint a, b;
    AccelSense sign;
    double t0, duration;
  };
  std::vector<Cell> cells;
  double t = 0.0;
  const std::size_t pieces = curve.segments.size();
  for (std::size_t k = 0; k < pieces; ++k) {
    const EnvelopePiece& piece = curve.segments[k];
    for (std::size_t i = 0; i + 1 < piece.points.size(); ++i) {
      const CurvePoint& a = piece.points[i];
      const CurvePoint& b = piece.points[i + 1];
      if (b.s - a.s <= 0.0) continue;
      const bool first = cells.empty();
      const bool last = k + 1 == pieces && i + 2 == piece.points.size();
      const double dur = CellTime(b.s - a.s, a.sdot, b.sdot,
                                  (a.sdot > kTiny || first) &&
                                      (b.sdot > kTiny || last));
      cells.push_back({a, b, piece.sign, t, dur});
      t += dur;
    }
  }
  if (cells.empty()) return {};
  const double total = t;
  const TorqueLimits& limits = model.limits();

  std::vector<TrajectorySample> out;
  const long count = static_cast<long>(std::floor(total / dt + 1e-9));
  std::size_t c = 0;
  for (long k = 0; k <= count + 1; ++k) {
    double tk = k * dt;
    if (k == count + 1) {
      if (total - count * dt <= 1e-12) break;
      tk = total;
    }
    while (c + 1 < cells.size() && cells[c].t0 + cells[c].duration < tk) ++c;
    const Cell& cell = cells[c];
    const double ds = cell.b.s - cell.a.s;
    const double v0 = cell.a.sdot, v1 = cell.b.sdot;
    const double acc = (v1 * v1 - v0 * v0) / (2.0 * ds);
    // Constant acceleration over the cell, time rescaled to the cell length.
    const double exact = 2.0 * ds / (v0 + v1);
    const double tau_c =
        std::clamp(tk - cell.t0, 0.0, cell.duration) * exact / cell.duration;
    TrajectorySample smp;
    smp.t = tk;
    smp.s = std::clamp(cell.a.s + v0 * tau_c + 0.5 * acc * tau_c * tau_c,
                       cell.a.s, cell.b.s);
    smp.sdot = std::max(0.0, v0 + acc * tau_c);

    const ReducedPathDynamics rd = Project(model, path, smp.s);
    const ConstraintPolygon poly = BuildPolygon(rd, limits, polygon);
    if (poly.empty()) {
      throw Error(ErrorCode::kEmptyPolygon,
                  "no feasible torque at s=" + std::to_string(smp.s));
    }
    smp.sdot = std::min(smp.sdot, std::sqrt(poly.MaxSdot2()));
    const ExtremalAccels ex = ExtremalAcc(poly, smp.sdot);
    const bool max = cell.sign == AccelSense::kMax;
    smp.sddot = max ? ex.sddot_max : ex.sddot_min;
    bool done = false;
    if (max ? ex.has_pattern_max : ex.has_pattern_min) {
      const PatternSolution sol =
          SolvePattern(rd, smp.sdot, max ? ex.pattern_max : ex.pattern_min,
                       limits, cell.sign);
      if (sol.within_bounds) {
        smp.tau = sol.tau;
        done = true;
      }
    }
    if (!done) {
      const LpExtremum lp = LpExtremalAcc(rd, smp.sdot, cell.sign, limits);
      smp.sddot = lp.sddot;
      smp.tau = lp.tau;
    }
    for (int j = 0; j < limits.size(); ++j) {
      if (std::abs(smp.tau[j] - limits.tau_min[j]) <= 1e-9 ||
          std::abs(smp.tau[j] - limits.tau_max[j]) <= 1e-9) {
        ++smp.saturated;
      }
    }
    const PathPoint pp = EvaluatePath(path, smp.s);
    smp.q = model.InverseKinematics(pp.f);
    smp.qdot = model.JointRates(smp.q, pp.df) * smp.sdot;
    out.push_back(std::move(smp));
  }
  return out;
}

SolutionCurve Solve(const RobotModel& model, const PathSpec& path,
                    const BoundaryConditions& bc,
                    const SolveOptions& options) {
  const ProjectedPath dyn(model, path);
  PhasePlaneSolver solver(dyn, options);
  return solver.Solve(bc);
}

}  // namespace topp
