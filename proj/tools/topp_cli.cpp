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

// topp: time-optimal path parameterization for redundantly actuated
// closed-chain robots.

#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "topp/topp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInfeasible = 2;

struct Common {
  std::string model = "planar-cmms";
  std::string path = "example1";
  std::optional<double> sdot_i;
  std::optional<double> sdot_f;
  double dt = 1e-3;
  int mvc_samples = 1000;
  unsigned seed = 0;  // outputs do not depend on it; the solver has no RNG
  std::string out;
};

struct ModelDeleter {
  void operator()(topp_model* m) const { topp_model_free(m); }
};
struct PathDeleter {
  void operator()(topp_path* p) const { topp_path_free(p); }
};
struct SolutionDeleter {
  void operator()(topp_solution* s) const { topp_solution_free(s); }
};
struct StringDeleter {
  void operator()(char* s) const { topp_string_free(s); }
};
using ModelPtr = std::unique_ptr<topp_model, ModelDeleter>;
using PathPtr = std::unique_ptr<topp_path, PathDeleter>;
using SolutionPtr = std::unique_ptr<topp_solution, SolutionDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

class Failure {
 public:
  explicit Failure(topp_status status) : status_(status) {}
  int ExitCode() const {
    return topp_status_is_infeasible(status_) ? kExitInfeasible : kExitConfig;
  }
  topp_status status() const { return status_; }

 private:
  topp_status status_;
};

void Check(topp_status status) {
  if (status != TOPP_OK) throw Failure(status);
}

void Emit(const std::string& file, const char* text) {
  if (file.empty() || file == "-") {
    std::fputs(text, stdout);
    return;
  }
  std::ofstream out(file, std::ios::binary);
  if (!out || !(out << text)) {
    std::fprintf(stderr, "topp: cannot write %s\n", file.c_str());
    throw Failure(TOPP_ERR_IO);
  }
}

void AddCommon(CLI::App* cmd, Common& c, bool boundary, bool out = true) {
  cmd->add_option("--model", c.model, "planar-cmms or a model JSON file")
      ->capture_default_str();
  cmd->add_option("--path", c.path,
                  "example1, example1-circle or a path JSON file")
      ->capture_default_str();
  cmd->add_option("--dt", c.dt, "integration step (s)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "seed for randomized sweeps")
      ->capture_default_str();
  if (boundary) {
    cmd->add_option("--sdot-i", c.sdot_i, "initial sdot (default: from path)");
    cmd->add_option("--sdot-f", c.sdot_f, "final sdot (default: from path)");
    cmd->add_option("--mvc-samples", c.mvc_samples, "MVC samples per unit s")
        ->capture_default_str()
        ->check(CLI::Range(10, 1000000));
  }
  if (out) cmd->add_option("--out", c.out, "output file ('-' for stdout)");
}

struct Loaded {
  ModelPtr model;
  PathPtr path;
  double sdot_i = 0.0;
  double sdot_f = 0.0;
};

Loaded Load(const Common& c, bool need_boundary) {
  Loaded l;
  topp_model* m = nullptr;
  Check(topp_model_load(c.model.c_str(), &m));
  l.model.reset(m);
  topp_path* p = nullptr;
  Check(topp_path_load(c.path.c_str(), &p));
  l.path.reset(p);
  int has = 0;
  Check(topp_path_boundary(p, &l.sdot_i, &l.sdot_f, &has));
  if (c.sdot_i) l.sdot_i = *c.sdot_i;
  if (c.sdot_f) l.sdot_f = *c.sdot_f;
  if (need_boundary && !has && (!c.sdot_i || !c.sdot_f)) {
    std::fprintf(stderr,
                 "topp: path %s has no boundary velocities; pass --sdot-i "
                 "and --sdot-f\n",
                 c.path.c_str());
    throw Failure(TOPP_ERR_INVALID_ARGUMENT);
  }
  return l;
}

topp_solve_options Options(const Common& c) {
  topp_solve_options o;
  topp_solve_options_init(&o);
  o.dt = c.dt;
  o.mvc_samples_per_unit = c.mvc_samples;
  return o;
}

int RunSolve(const Common& c, const std::string& method, bool full_mvc,
             const std::string& trajectory, double traj_dt) {
  Loaded l = Load(c, true);
  topp_solve_options o = Options(c);
  o.method = method == "lp" ? TOPP_METHOD_LP_EVERY_STEP : TOPP_METHOD_SPA;
  o.full_mvc = full_mvc ? 1 : 0;
  topp_solution* raw = nullptr;
  Check(topp_solve(l.model.get(), l.path.get(), l.sdot_i, l.sdot_f, &o, &raw));
  SolutionPtr sol(raw);

  std::printf("procedure: %s\n", topp_solution_procedure(sol.get()));
  std::printf("gamma: %.6f s\n", topp_solution_gamma(sol.get()));
  const size_t n = topp_solution_switch_count(sol.get());
  std::printf("switch points: %zu\n", n);
  for (size_t i = 0; i < n; ++i) {
    double s = 0.0, sdot = 0.0;
    const char* kind = nullptr;
    Check(topp_solution_switch_point(sol.get(), i, &s, &sdot, &kind));
    std::printf("  S%zu  s=%.4f  sdot=%.4f  %s\n", i + 1, s, sdot, kind);
  }
  topp_counters ct;
  Check(topp_solution_counters(sol.get(), &ct));
  std::printf("mvc polygon builds: %ld\n", ct.mvc_polygon_builds);

  char* json = nullptr;
  Check(topp_solution_json(sol.get(), &json));
  StringPtr json_owner(json);
  Emit(c.out.empty() ? "solution.json" : c.out, json);
  if (trajectory != "none") {
    char* csv = nullptr;
    Check(topp_solution_trajectory_csv(sol.get(), l.model.get(), l.path.get(),
                                       traj_dt, &csv));
    StringPtr csv_owner(csv);
    Emit(trajectory, csv);
  }
  return kExitOk;
}

int RunMvc(const Common& c, double from, double to, int samples) {
  Loaded l = Load(c, false);
  char* csv = nullptr;
  Check(topp_mvc_csv(l.model.get(), l.path.get(), from, to, samples, 1e6,
                     &csv));
  StringPtr owner(csv);
  Emit(c.out, csv);
  return kExitOk;
}

int RunPolygon(const Common& c, double s) {
  Loaded l = Load(c, false);
  char* json = nullptr;
  Check(topp_polygon_json(l.model.get(), l.path.get(), s, 1e6, &json));
  StringPtr owner(json);
  Emit(c.out, json);
  return kExitOk;
}

int RunBench(const Common& c, int repeat) {
  Loaded l = Load(c, true);
  const topp_solve_options o = Options(c);
  topp_bench_report r;
  char* json = nullptr;
  Check(topp_bench(l.model.get(), l.path.get(), l.sdot_i, l.sdot_f, &o, repeat,
                   &r, &json));
  StringPtr owner(json);
  std::printf("median of %d runs (s)      mvc    solution     total\n",
              r.repeat);
  std::printf("spa                   %9.4f  %9.4f  %9.4f\n", r.spa_mvc_seconds,
              r.spa_solution_seconds, r.spa_total_seconds);
  std::printf("lp_every_step         %9.4f  %9.4f  %9.4f\n",
              r.baseline_mvc_seconds, r.baseline_solution_seconds,
              r.baseline_total_seconds);
  std::printf("reduction: %.1f%%\n", r.reduction_percent);
  std::printf("envelope deviation: %.3g\n", r.envelope_deviation);
  if (!c.out.empty()) Emit(c.out, json);
  return kExitOk;
}

int RunDescribe(const Common& c) {
  Loaded l = Load(c, false);
  char* json = nullptr;
  Check(topp_describe_json(l.model.get(), l.path.get(), &json));
  StringPtr owner(json);
  Emit(c.out, json);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-optimal path parameterization for redundantly actuated "
               "cooperative manipulators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(topp_version()));

  Common common;
  std::string method = "spa";
  bool full_mvc = false;
  std::string trajectory = "trajectory.csv";
  double traj_dt = 1e-3;
  auto* solve = app.add_subcommand("solve", "solve for the time-optimal curve");
  AddCommon(solve, common, true);
  solve->add_option("--method", method, "spa or lp")
      ->capture_default_str()
      ->check(CLI::IsMember({"spa", "lp"}));
  solve->add_flag("--full-mvc", full_mvc, "sample the whole MVC first");
  solve->add_option("--trajectory", trajectory,
                    "trajectory CSV ('none' to skip, '-' for stdout)")
      ->capture_default_str();
  solve->add_option("--traj-dt", traj_dt, "trajectory sample period (s)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  double from = 0.0, to = 1.0;
  int samples = 1000;
  auto* mvc = app.add_subcommand("mvc", "write the MVC as CSV");
  AddCommon(mvc, common, false);
  mvc->add_option("--from", from)->capture_default_str();
  mvc->add_option("--to", to)->capture_default_str();
  mvc->add_option("--samples", samples, "number of cells")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  double s = 0.0;
  auto* polygon =
      app.add_subcommand("polygon", "write the constraint polygon at s");
  AddCommon(polygon, common, false);
  polygon->add_option("--s", s, "path parameter")->required();

  int repeat = 5;
  auto* bench =
      app.add_subcommand("bench", "compare pattern reuse with LP every step");
  AddCommon(bench, common, true);
  bench->add_option("--repeat", repeat, "runs per method")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  auto* describe =
      app.add_subcommand("describe", "print the model and path setup");
  AddCommon(describe, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (solve->parsed()) return RunSolve(common, method, full_mvc, trajectory, traj_dt);
    if (mvc->parsed()) return RunMvc(common, from, to, samples);
    if (polygon->parsed()) return RunPolygon(common, s);
    if (bench->parsed()) return RunBench(common, repeat);
    if (describe->parsed()) return RunDescribe(common);
  } catch (const Failure& f) {
    if (f.status() != TOPP_OK && std::strlen(topp_last_error()) > 0) {
      std::fprintf(stderr, "topp: %s: %s\n", topp_status_string(f.status()),
                   topp_last_error());
    }
    return f.ExitCode();
  }
  return kExitConfig;
}
