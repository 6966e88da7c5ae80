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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "doctest.h"
#include "topp/topp.h"

namespace {

struct Loaded {
  topp_model* model = nullptr;
  topp_path* path = nullptr;
  Loaded(const char* m, const char* p) {
    REQUIRE(topp_model_load(m, &model) == TOPP_OK);
    REQUIRE(topp_path_load(p, &path) == TOPP_OK);
  }
  ~Loaded() {
    topp_path_free(path);
    topp_model_free(model);
  }
};

std::string Take(char* text) {
  std::string out = text == nullptr ? "" : text;
  topp_string_free(text);
  return out;
}

}  // namespace

TEST_CASE("status strings and version") {
  CHECK(std::string(topp_version()).size() > 0);
  CHECK(std::string(topp_status_string(TOPP_OK)) == "ok");
  CHECK(std::string(topp_status_string(TOPP_ERR_PARSE)) == "parse");
  CHECK(topp_status_is_infeasible(TOPP_ERR_INFEASIBLE_BOUNDARY));
  CHECK_FALSE(topp_status_is_infeasible(TOPP_ERR_IO));
  CHECK(topp_set_log_level("loud") == TOPP_ERR_INVALID_ARGUMENT);
  CHECK(topp_set_log_level("error") == TOPP_OK);
}

TEST_CASE("model and path handles") {
  Loaded h("planar-cmms", "example1");
  int n, p, m, r;
  REQUIRE(topp_model_dims(h.model, &n, &p, &m, &r) == TOPP_OK);
  CHECK(n == 6);
  CHECK(p == 3);
  CHECK(m == 6);
  CHECK(r == 3);
  double si, sf;
  int has;
  REQUIRE(topp_path_boundary(h.path, &si, &sf, &has) == TOPP_OK);
  CHECK(has == 1);
  CHECK(si == 4.0);
  CHECK(sf == 4.0);
}

TEST_CASE("load errors carry a message") {
  topp_path* path = nullptr;
  CHECK(topp_path_load("/no/such/file.json", &path) == TOPP_ERR_IO);
  CHECK(path == nullptr);
  CHECK(std::string(topp_last_error()).find("/no/such/file.json") !=
        std::string::npos);
  CHECK(topp_path_load(nullptr, &path) == TOPP_ERR_INVALID_ARGUMENT);
  topp_model* model = nullptr;
  CHECK(topp_model_load("planar-cmms", nullptr) == TOPP_ERR_INVALID_ARGUMENT);
  CHECK(model == nullptr);
}

TEST_CASE("solve through the c interface") {
  Loaded h("planar-cmms", "example1");
  topp_solve_options opt;
  topp_solve_options_init(&opt);
  CHECK(opt.dt == 1e-3);
  topp_solution* sol = nullptr;
  REQUIRE(topp_solve(h.model, h.path, 4.0, 4.0, &opt, &sol) == TOPP_OK);
  CHECK(std::string(topp_solution_procedure(sol)) == "semi_direct");
  CHECK(std::abs(topp_solution_gamma(sol) - 0.206) < 0.01);
  REQUIRE(topp_solution_switch_count(sol) == 5);
  double s, sdot, sddot;
  const char* kind = nullptr;
  REQUIRE(topp_solution_switch_point(sol, 1, &s, &sdot, &kind) == TOPP_OK);
  CHECK(std::string(kind) == "smooth_critical");
  CHECK(topp_solution_switch_point(sol, 5, &s, &sdot, &kind) ==
        TOPP_ERR_INVALID_ARGUMENT);
  const size_t n = topp_solution_envelope_size(sol);
  REQUIRE(n > 100);
  REQUIRE(topp_solution_envelope_point(sol, 0, &s, &sdot, &sddot) == TOPP_OK);
  CHECK(s == 0.0);
  CHECK(std::abs(sdot - 4.0) < 1e-6);
  topp_counters c;
  REQUIRE(topp_solution_counters(sol, &c) == TOPP_OK);
  CHECK(c.mvc_polygon_builds > 0);
  CHECK(c.lp_calls == 0);

  char* json = nullptr;
  REQUIRE(topp_solution_json(sol, &json) == TOPP_OK);
  CHECK(Take(json).find("\"semi_direct\"") != std::string::npos);
  char* csv = nullptr;
  REQUIRE(topp_solution_trajectory_csv(sol, h.model, h.path, 1e-3, &csv) ==
          TOPP_OK);
  CHECK(Take(csv).rfind("t,s,sdot,sddot,q1", 0) == 0);
  topp_solution_free(sol);
}

TEST_CASE("circle path with rest boundaries") {
  Loaded h("planar-cmms", "example1-circle");
  topp_solution* sol = nullptr;
  REQUIRE(topp_solve(h.model, h.path, 0.0, 0.0, nullptr, &sol) == TOPP_OK);
  CHECK(std::string(topp_solution_procedure(sol)) == "direct");
  topp_counters c;
  REQUIRE(topp_solution_counters(sol, &c) == TOPP_OK);
  CHECK(c.mvc_polygon_builds == 0);
  topp_solution_free(sol);
}

TEST_CASE("infeasible boundary is reported") {
  Loaded h("planar-cmms", "example1");
  topp_solution* sol = nullptr;
  const topp_status st = topp_solve(h.model, h.path, 60.0, 4.0, nullptr, &sol);
  CHECK(st == TOPP_ERR_INFEASIBLE_BOUNDARY);
  CHECK(topp_status_is_infeasible(st));
  CHECK(sol == nullptr);
}

TEST_CASE("bad options are rejected") {
  Loaded h("planar-cmms", "example1");
  topp_solve_options opt;
  topp_solve_options_init(&opt);
  opt.dt = -1.0;
  topp_solution* sol = nullptr;
  CHECK(topp_solve(h.model, h.path, 4.0, 4.0, &opt, &sol) ==
        TOPP_ERR_INVALID_PARAMETER);
  topp_solve_options_init(&opt);
  opt.method = 7;
  CHECK(topp_solve(h.model, h.path, 4.0, 4.0, &opt, &sol) ==
        TOPP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("mvc, polygon and describe text outputs") {
  Loaded h("planar-cmms", "example1");
  char* out = nullptr;
  REQUIRE(topp_mvc_csv(h.model, h.path, 0.0, 1.0, 1000, 1e6, &out) == TOPP_OK);
  const std::string csv = Take(out);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1002);
  REQUIRE(topp_polygon_json(h.model, h.path, 0.5, 1e6, &out) == TOPP_OK);
  CHECK(Take(out).find("\"vertices\"") != std::string::npos);
  CHECK(topp_polygon_json(h.model, h.path, 1.5, 1e6, &out) ==
        TOPP_ERR_INVALID_ARGUMENT);
  REQUIRE(topp_describe_json(h.model, h.path, &out) == TOPP_OK);
  CHECK(Take(out).find("\"dims\"") != std::string::npos);
}
