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

#include "topp/topp.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "topp/bench.hpp"
#include "topp/error.hpp"
#include "topp/io.hpp"
#include "topp/log.hpp"
#include "topp/phaseplane.hpp"
#include "topp/polygon.hpp"
#include "topp/projection.hpp"

struct topp_model {
  topp::ModelConfig config;
  std::unique_ptr<topp::RobotModel> model;
};

struct topp_path {
  topp::PathFile file;
};

struct topp_solution {
  topp::SolutionCurve curve;
  std::vector<topp::CurvePoint> envelope;
};

namespace {

thread_local std::string g_last_error;

topp_status Fail(topp_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename F>
topp_status Guard(F&& body) {
  try {
    body();
    return TOPP_OK;
  } catch (const topp::Error& e) {
    return Fail(static_cast<topp_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(TOPP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(TOPP_ERR_INTERNAL, e.what());
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw topp::Error(topp::ErrorCode::kInvalidArgument, what);
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

topp::SolveOptions ToOptions(const topp_solve_options* o) {
  topp::SolveOptions out;
  if (o == nullptr) return out;
  Require(o->method == TOPP_METHOD_SPA || o->method == TOPP_METHOD_LP_EVERY_STEP,
          "unknown integration method");
  out.dt = o->dt;
  out.mvc_samples_per_unit = o->mvc_samples_per_unit;
  out.zero_inertia_grid = o->zero_inertia_grid;
  out.method = o->method == TOPP_METHOD_SPA
                   ? topp::IntegrationMethod::kSpa
                   : topp::IntegrationMethod::kLpEveryStep;
  out.full_mvc = o->full_mvc != 0;
  out.probe_steps = o->probe_steps;
  out.max_steps = o->max_steps;
  out.polygon.sdot2_cap = o->sdot2_cap;
  out.Validate();
  return out;
}

}  // namespace

extern "C" {

const char* topp_version(void) { return "1.0.0"; }

const char* topp_status_string(topp_status status) {
  if (status == TOPP_OK) return "ok";
  if (status == TOPP_ERR_INTERNAL) return "internal";
  return topp::ToString(static_cast<topp::ErrorCode>(status));
}

const char* topp_last_error(void) { return g_last_error.c_str(); }

int topp_status_is_infeasible(topp_status status) {
  switch (status) {
    case TOPP_ERR_UNREACHABLE_POSE:
    case TOPP_ERR_SINGULAR_JACOBIAN:
    case TOPP_ERR_RANK_DEFICIENT:
    case TOPP_ERR_EMPTY_POLYGON:
    case TOPP_ERR_VELOCITY_INFEASIBLE:
    case TOPP_ERR_INFEASIBLE_BOUNDARY:
    case TOPP_ERR_NO_SOLUTION:
    case TOPP_ERR_DIVERGENT_TIME:
      return 1;
    default:
      return 0;
  }
}

topp_status topp_set_log_level(const char* level) {
  return Guard([&] {
    Require(level != nullptr, "null log level");
    const std::string l = level;
    if (l == "error") {
      topp::SetLogLevel(topp::LogLevel::kError);
    } else if (l == "info") {
      topp::SetLogLevel(topp::LogLevel::kInfo);
    } else if (l == "debug") {
      topp::SetLogLevel(topp::LogLevel::kDebug);
    } else {
      Require(false, "log level must be error, info or debug");
    }
  });
}

void topp_solve_options_init(topp_solve_options* options) {
  if (options == nullptr) return;
  const topp::SolveOptions d;
  options->dt = d.dt;
  options->mvc_samples_per_unit = d.mvc_samples_per_unit;
  options->zero_inertia_grid = d.zero_inertia_grid;
  options->method = TOPP_METHOD_SPA;
  options->full_mvc = d.full_mvc ? 1 : 0;
  options->probe_steps = d.probe_steps;
  options->max_steps = d.max_steps;
  options->sdot2_cap = d.polygon.sdot2_cap;
}

topp_status topp_model_load(const char* name_or_file, topp_model** out) {
  return Guard([&] {
    Require(name_or_file != nullptr && out != nullptr, "null argument");
    auto m = std::make_unique<topp_model>();
    m->config = topp::LoadModelConfig(name_or_file);
    m->model = topp::MakePlanarCmms(m->config.params, m->config.limits);
    *out = m.release();
  });
}

void topp_model_free(topp_model* model) { delete model; }

topp_status topp_model_dims(const topp_model* model, int* n, int* p, int* m,
                            int* r) {
  return Guard([&] {
    Require(model != nullptr, "null model");
    const topp::ModelDims& d = model->model->dims();
    if (n) *n = d.n;
    if (p) *p = d.p;
    if (m) *m = d.m;
    if (r) *r = d.r;
  });
}

topp_status topp_path_load(const char* name_or_file, topp_path** out) {
  return Guard([&] {
    Require(name_or_file != nullptr && out != nullptr, "null argument");
    auto p = std::make_unique<topp_path>();
    p->file = topp::LoadPathFile(name_or_file);
    *out = p.release();
  });
}

void topp_path_free(topp_path* path) { delete path; }

topp_status topp_path_boundary(const topp_path* path, double* sdot_i,
                               double* sdot_f, int* has_boundary) {
  return Guard([&] {
    Require(path != nullptr, "null path");
    const auto& b = path->file.boundary;
    if (has_boundary) *has_boundary = b ? 1 : 0;
    if (sdot_i) *sdot_i = b ? b->sdot_i : 0.0;
    if (sdot_f) *sdot_f = b ? b->sdot_f : 0.0;
  });
}

topp_status topp_solve(const topp_model* model, const topp_path* path,
                       double sdot_i, double sdot_f,
                       const topp_solve_options* options, topp_solution** out) {
  return Guard([&] {
    Require(model != nullptr && path != nullptr && out != nullptr,
            "null argument");
    Require(path->file.path.size() == model->model->dims().r,
            "path coordinate count does not match the model");
    auto sol = std::make_unique<topp_solution>();
    sol->curve = topp::Solve(*model->model, path->file.path,
                             topp::BoundaryConditions{sdot_i, sdot_f},
                             ToOptions(options));
    sol->envelope = sol->curve.Envelope();
    *out = sol.release();
  });
}

void topp_solution_free(topp_solution* solution) { delete solution; }

const char* topp_solution_procedure(const topp_solution* solution) {
  return solution ? topp::ToString(solution->curve.procedure) : "";
}

double topp_solution_gamma(const topp_solution* solution) {
  return solution ? solution->curve.gamma : 0.0;
}

size_t topp_solution_switch_count(const topp_solution* solution) {
  return solution ? solution->curve.switch_points.size() : 0;
}

topp_status topp_solution_switch_point(const topp_solution* solution,
                                       size_t index, double* s, double* sdot,
                                       const char** kind) {
  return Guard([&] {
    Require(solution != nullptr, "null solution");
    Require(index < solution->curve.switch_points.size(),
            "switch point index out of range");
    const topp::SwitchPoint& sp = solution->curve.switch_points[index];
    if (s) *s = sp.location.s;
    if (sdot) *sdot = sp.location.sdot;
    if (kind) *kind = topp::ToString(sp.kind);
  });
}

size_t topp_solution_envelope_size(const topp_solution* solution) {
  return solution ? solution->envelope.size() : 0;
}

topp_status topp_solution_envelope_point(const topp_solution* solution,
                                         size_t index, double* s, double* sdot,
                                         double* sddot) {
  return Guard([&] {
    Require(solution != nullptr, "null solution");
    Require(index < solution->envelope.size(), "envelope index out of range");
    const topp::CurvePoint& p = solution->envelope[index];
    if (s) *s = p.s;
    if (sdot) *sdot = p.sdot;
    if (sddot) *sddot = p.sddot;
  });
}

topp_status topp_solution_counters(const topp_solution* solution,
                                   topp_counters* out) {
  return Guard([&] {
    Require(solution != nullptr && out != nullptr, "null argument");
    const topp::SolveStats& st = solution->curve.stats;
    out->mvc_polygon_builds = st.mvc_polygon_builds;
    out->refresh_polygon_builds = st.refresh_polygon_builds;
    out->check_polygon_builds = st.check_polygon_builds;
    out->lp_calls = st.lp_calls;
    out->spa_solves = st.spa_solves;
    out->steps = st.steps;
    out->mvc_seconds = st.mvc_seconds;
    out->total_seconds = st.total_seconds;
  });
}

topp_status topp_solution_json(const topp_solution* solution, char** out) {
  return Guard([&] {
    Require(solution != nullptr && out != nullptr, "null argument");
    *out = CopyString(topp::SolutionToJson(solution->curve));
  });
}

topp_status topp_solution_trajectory_csv(const topp_solution* solution,
                                         const topp_model* model,
                                         const topp_path* path, double dt,
                                         char** out) {
  return Guard([&] {
    Require(solution != nullptr && model != nullptr && path != nullptr &&
                out != nullptr,
            "null argument");
    const auto samples = topp::SampleJointTrajectory(
        solution->curve, *model->model, path->file.path, dt);
    *out = CopyString(topp::TrajectoryToCsv(samples));
  });
}

topp_status topp_mvc_csv(const topp_model* model, const topp_path* path,
                         double from, double to, int intervals,
                         double sdot2_cap, char** out) {
  return Guard([&] {
    Require(model != nullptr && path != nullptr && out != nullptr,
            "null argument");
    const topp::ProjectedPath dyn(*model->model, path->file.path);
    topp::PolygonOptions po;
    po.sdot2_cap = sdot2_cap;
    *out = CopyString(
        topp::MvcToCsv(topp::SampleMvc(dyn, from, to, intervals, po)));
  });
}

topp_status topp_polygon_json(const topp_model* model, const topp_path* path,
                              double s, double sdot2_cap, char** out) {
  return Guard([&] {
    Require(model != nullptr && path != nullptr && out != nullptr,
            "null argument");
    Require(s >= 0.0 && s <= 1.0, "s must lie in [0, 1]");
    topp::PolygonOptions po;
    po.sdot2_cap = sdot2_cap;
    const topp::ReducedPathDynamics rd =
        topp::Project(*model->model, path->file.path, s);
    *out = CopyString(topp::PolygonToJson(
        topp::BuildPolygon(rd, model->model->limits(), po)));
  });
}

topp_status topp_describe_json(const topp_model* model, const topp_path* path,
                               char** out) {
  return Guard([&] {
    Require(model != nullptr && path != nullptr && out != nullptr,
            "null argument");
    *out = CopyString(topp::DescribeToJson(model->config, path->file));
  });
}

topp_status topp_bench(const topp_model* model, const topp_path* path,
                       double sdot_i, double sdot_f,
                       const topp_solve_options* options, int repeat,
                       topp_bench_report* report, char** json) {
  return Guard([&] {
    Require(model != nullptr && path != nullptr, "null argument");
    const topp::BenchReport r =
        topp::RunBench(*model->model, path->file.path,
                       topp::BoundaryConditions{sdot_i, sdot_f},
                       ToOptions(options), repeat);
    if (report) {
      report->repeat = r.repeat;
      report->spa_mvc_seconds = r.spa.mvc_seconds;
      report->spa_solution_seconds = r.spa.solution_seconds;
      report->spa_total_seconds = r.spa.total_seconds;
      report->baseline_mvc_seconds = r.baseline.mvc_seconds;
      report->baseline_solution_seconds = r.baseline.solution_seconds;
      report->baseline_total_seconds = r.baseline.total_seconds;
      report->reduction_percent = r.reduction_percent;
      report->envelope_deviation = r.envelope_deviation;
    }
    if (json) *json = CopyString(topp::BenchReportToJson(r));
  });
}

void topp_string_free(char* text) { std::free(text); }

}  // extern "C"
