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

#include <cstdio>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "test_util.hpp"
#include "topp/error.hpp"
#include "topp/io.hpp"

using namespace topp;
using Json = nlohmann::json;

namespace {

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

std::string TempFile(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("model config round trip") {
  ModelConfig cfg;
  cfg.params.l1 = 0.55;
  cfg.params.elbow_branch = {1, -1};
  cfg.limits.tau_max[2] = 12.0;
  const ModelConfig back = ParseModelConfig(ModelConfigToJson(cfg));
  CHECK(back.params.l1 == 0.55);
  CHECK(back.params.elbow_branch[1] == -1);
  CHECK(back.limits.tau_max[2] == 12.0);
  CHECK(back.limits.tau_min == cfg.limits.tau_min);
}

TEST_CASE("model config with defaults for omitted keys") {
  const ModelConfig cfg = ParseModelConfig(
      R"({"type":"planar_cmms","masses":{"m3":0.5},"gravity":0})");
  CHECK(cfg.params.m3 == 0.5);
  CHECK(cfg.params.gravity == 0.0);
  CHECK(cfg.params.l2 == 0.6);
}

TEST_CASE("model config errors") {
  CHECK(CodeOf([] { ParseModelConfig(R"({"type":"planar_cmms","x":1})"); }) ==
        ErrorCode::kParse);
  CHECK(CodeOf([] {
          ParseModelConfig(R"({"type":"planar_cmms","lengths":{"l9":1}})");
        }) == ErrorCode::kParse);
  CHECK(CodeOf([] { ParseModelConfig(R"({"type":"puma"})"); }) ==
        ErrorCode::kParse);
  CHECK(CodeOf([] { ParseModelConfig("{not json"); }) == ErrorCode::kParse);
  CHECK(CodeOf([] {
          ParseModelConfig(R"({"type":"planar_cmms","elbow_branch":[1,2]})");
        }) == ErrorCode::kParse);
}

TEST_CASE("path file parsing") {
  const PathFile pf = ParsePathFile(R"({
    "coords": [[{"poly":{"a":0.6,"k":1}},{"poly":{"a":0.4,"k":0}}],
               [{"sin":{"a":0.1,"w":1}},{"poly":{"a":0.7,"k":0}}],
               [{"cos":{"a":0.2,"w":0.5,"phi":0.1}}]],
    "sdot_i": 4.0, "sdot_f": 3.0})");
  REQUIRE(pf.path.size() == 3);
  REQUIRE(pf.boundary.has_value());
  CHECK(pf.boundary->sdot_f == 3.0);
  const PathPoint pt = EvaluatePath(pf.path, 0.25);
  CHECK(pt.f[0] == doctest::Approx(0.55));
  CHECK(pt.f[1] == doctest::Approx(0.8));
  CHECK(pt.f[2] == doctest::Approx(0.2 * std::cos(0.25 * std::numbers::pi + 0.1)));

  const PathFile back = ParsePathFile(PathToJson(pf));
  CHECK(EvaluatePath(back.path, 0.3).f == EvaluatePath(pf.path, 0.3).f);
  CHECK(back.boundary->sdot_i == 4.0);
}

TEST_CASE("path file errors") {
  CHECK(CodeOf([] { ParsePathFile(R"({"coords":[]})"); }) == ErrorCode::kParse);
  CHECK(CodeOf([] {
          ParsePathFile(R"({"coords":[[{"tan":{"a":1}}]]})");
        }) == ErrorCode::kParse);
  CHECK(CodeOf([] {
          ParsePathFile(R"({"coords":[[{"poly":{"a":1,"k":-1}}]]})");
        }) == ErrorCode::kParse);
  CHECK(CodeOf([] {
          ParsePathFile(R"({"coords":[[{"poly":{"a":1,"k":0}}]],"sdot_i":1})");
        }) == ErrorCode::kParse);
  CHECK(CodeOf([] {
          ParsePathFile(R"({"coords":[[{"poly":{"a":1,"k":0}}]],"extra":1})");
        }) == ErrorCode::kParse);
}

TEST_CASE("loading by name and by file") {
  CHECK(LoadPathFile("example1").boundary->sdot_i == 4.0);
  CHECK(LoadPathFile("example1-circle").boundary->sdot_f == 0.0);
  CHECK(LoadModelConfig("planar-cmms").params.b0 == 1.4);
  CHECK(CodeOf([] { LoadPathFile("/nonexistent/path.json"); }) ==
        ErrorCode::kIo);

  const std::string file = TempFile("topp_io_test_model.json");
  WriteTextFile(file, ModelConfigToJson(ModelConfig{}));
  CHECK(LoadModelConfig(file).params.l3 == 0.3);
  std::remove(file.c_str());
}

TEST_CASE("solution json layout") {
  const auto model = testing::DefaultModel();
  const SolutionCurve sol = Solve(*model, Example1Path(), {4.0, 4.0});
  const Json j = Json::parse(SolutionToJson(sol));
  CHECK(j.at("procedure") == "semi_direct");
  CHECK(j.at("gamma").get<double>() == sol.gamma);
  CHECK(j.at("switch_points").size() == 5);
  CHECK(j.at("switch_points")[1].at("kind") == "smooth_critical");
  CHECK(j.at("segments").size() == 6);
  CHECK(j.at("segments")[0].at("sign") == "max");
  CHECK(j.at("segments")[0].at("points")[0].size() == 3);
  CHECK(j.at("mvc").size() == sol.mvc.size());
  CHECK(j.at("counters").at("mvc_polygon_builds") ==
        sol.stats.mvc_polygon_builds);
  CHECK_FALSE(j.contains("timings"));
  // Identical inputs give identical text.
  CHECK(SolutionToJson(sol) ==
        SolutionToJson(Solve(*model, Example1Path(), {4.0, 4.0})));
}

TEST_CASE("polygon json uses one-based actuators") {
  const auto model = testing::DefaultModel();
  const ConstraintPolygon poly =
      BuildPolygon(Project(*model, Example1Path(), 0.5), model->limits());
  const Json j = Json::parse(PolygonToJson(poly));
  CHECK(j.at("s") == 0.5);
  CHECK(j.at("capped") == false);
  REQUIRE(j.at("vertices").size() == poly.vertices.size());
  for (const Json& v : j.at("vertices")) {
    const std::size_t need = v.at("clipped").get<bool>() ? 4 : 5;
    CHECK(v.at("saturated").size() >= need);
    for (const Json& e : v.at("saturated")) {
      CHECK(e[0].get<int>() >= 1);
      CHECK(e[0].get<int>() <= 6);
      CHECK((e[1] == "lo" || e[1] == "hi"));
    }
  }
}

TEST_CASE("csv writers") {
  std::vector<MvcSample> mvc(3);
  mvc[1].s = 0.5;
  mvc[1].sdot = 1.25;
  const std::string csv = MvcToCsv(mvc);
  CHECK(csv.substr(0, 7) == "s,sdot\n");
  CHECK(csv.find("0.5,1.25\n") != std::string::npos);

  TrajectorySample ts;
  ts.t = 0.1;
  ts.q = Vec::Zero(2);
  ts.qdot = Vec::Zero(2);
  ts.tau = Vec::Ones(3);
  const std::string traj = TrajectoryToCsv(std::vector<TrajectorySample>{ts});
  CHECK(traj.substr(0, traj.find('\n')) ==
        "t,s,sdot,sddot,q1,q2,qd1,qd2,tau1,tau2,tau3");
}

TEST_CASE("describe lists dims and inverse kinematics at the path ends") {
  const Json j =
      Json::parse(DescribeToJson(ModelConfig{}, LoadPathFile("example1")));
  CHECK(j.at("dims").at("n") == 6);
  CHECK(j.at("dims").at("m") == 6);
  CHECK(j.at("path_ends").size() == 2);
  CHECK(j.at("path_ends")[0].at("q").size() == 6);
}
