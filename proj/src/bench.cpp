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

#include "topp/bench.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "json.hpp"
#include "topp/error.hpp"
#include "topp/log.hpp"
#include "topp/projection.hpp"

namespace topp {
namespace {

double SdotAt(const std::vector<CurvePoint>& env, double s) {
  auto it = std::lower_bound(
      env.begin(), env.end(), s,
      [](const CurvePoint& p, double x) { return p.s < x; });
  if (it == env.begin()) return env.front().sdot;
  if (it == env.end()) return env.back().sdot;
  const CurvePoint& b = *it;
  const CurvePoint& a = *(it - 1);
  if (b.s == a.s) return std::min(a.sdot, b.sdot);
  return a.sdot + (s - a.s) / (b.s - a.s) * (b.sdot - a.sdot);
}

struct Run {
  BenchTiming timing;
  SolutionCurve solution;
};

Run TimedSolve(const ProjectedPath& dyn, const BoundaryConditions& bc,
               const SolveOptions& options) {
  PhasePlaneSolver solver(dyn, options);
  Run run;
  run.solution = solver.Solve(bc);
  const SolveStats& st = run.solution.stats;
  run.timing.total_seconds = st.total_seconds;
  run.timing.mvc_seconds = st.mvc_seconds;
  run.timing.solution_seconds = st.total_seconds - st.mvc_seconds;
  return run;
}

BenchTiming Median(std::vector<BenchTiming> t) {
  std::sort(t.begin(), t.end(), [](const BenchTiming& a, const BenchTiming& b) {
    return a.total_seconds < b.total_seconds;
  });
  return t[t.size() / 2];
}

}  // namespace

double EnvelopeDeviation(const SolutionCurve& a, const SolutionCurve& b) {
  const std::vector<CurvePoint> ea = a.Envelope();
  const std::vector<CurvePoint> eb = b.Envelope();
  double dev = 0.0;
  for (const CurvePoint& p : ea) dev = std::max(dev, std::abs(p.sdot - SdotAt(eb, p.s)));
  for (const CurvePoint& p : eb) dev = std::max(dev, std::abs(p.sdot - SdotAt(ea, p.s)));
  return dev;
}

BenchReport RunBench(const RobotModel& model, const PathSpec& path,
                     const BoundaryConditions& bc, const SolveOptions& options,
                     int repeat, double tolerance) {
  if (repeat < 1) {
    throw Error(ErrorCode::kInvalidParameter, "repeat must be >= 1");
  }
  const ProjectedPath dyn(model, path);
  SolveOptions spa = options;
  spa.method = IntegrationMethod::kSpa;
  spa.full_mvc = false;
  SolveOptions lp = options;
  lp.method = IntegrationMethod::kLpEveryStep;
  lp.full_mvc = true;

  BenchReport report;
  report.repeat = repeat;
  std::vector<BenchTiming> ts, tl;
  Run last_spa, last_lp;
  for (int i = 0; i < repeat; ++i) {
    last_spa = TimedSolve(dyn, bc, spa);
    last_lp = TimedSolve(dyn, bc, lp);
    ts.push_back(last_spa.timing);
    tl.push_back(last_lp.timing);
    Log(LogLevel::kInfo, "bench run %d: spa %.4f s, baseline %.4f s", i + 1,
        last_spa.timing.total_seconds, last_lp.timing.total_seconds);
  }
  report.envelope_deviation =
      EnvelopeDeviation(last_spa.solution, last_lp.solution);
  if (!(report.envelope_deviation <= tolerance)) {
    throw Error(ErrorCode::kBenchmarkMismatch,
                "SPA and LP envelopes differ by " +
                    std::to_string(report.envelope_deviation) +
                    "; refusing to report timings");
  }
  report.spa = Median(ts);
  report.baseline = Median(tl);
  report.reduction_percent =
      100.0 * (1.0 - report.spa.total_seconds / report.baseline.total_seconds);
  report.gamma_spa = last_spa.solution.gamma;
  report.gamma_baseline = last_lp.solution.gamma;
  report.spa_stats = last_spa.solution.stats;
  report.baseline_stats = last_lp.solution.stats;
  return report;
}

std::string BenchReportToJson(const BenchReport& r) {
  using Json = nlohmann::ordered_json;
  auto timing = [](const char* method, const BenchTiming& t,
                   const SolveStats& st) {
    return Json{{"method", method},
                {"mvc_seconds", t.mvc_seconds},
                {"solution_seconds", t.solution_seconds},
                {"total_seconds", t.total_seconds},
                {"mvc_polygon_builds", st.mvc_polygon_builds},
                {"lp_calls", st.lp_calls},
                {"spa_solves", st.spa_solves}};
  };
  Json j = {{"repeat", r.repeat},
            {"spa", timing("spa", r.spa, r.spa_stats)},
            {"baseline", timing("lp_every_step", r.baseline, r.baseline_stats)},
            {"reduction_percent", r.reduction_percent},
            {"envelope_deviation", r.envelope_deviation},
            {"gamma_spa", r.gamma_spa},
            {"gamma_baseline", r.gamma_baseline}};
  return j.dump(2) + "\n";
}

}  // namespace topp
