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

#include "topp/io.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "topp/error.hpp"

namespace topp {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void ParseFail(const std::string& what) {
  throw Error(ErrorCode::kParse, what);
}

void RejectUnknown(const Json& obj, std::initializer_list<const char*> keys,
                   const std::string& where) {
  if (!obj.is_object()) ParseFail(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : keys) known |= key == k;
    if (!known) ParseFail(where + ": unknown key \"" + key + "\"");
  }
}

double Number(const Json& obj, const char* key, const std::string& where,
              double fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number()) ParseFail(where + "." + key + ": expected a number");
  return v.get<double>();
}

Vec NumberArray(const Json& v, const std::string& where) {
  if (!v.is_array()) ParseFail(where + ": expected an array of numbers");
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) ParseFail(where + ": expected numbers");
    out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
  }
  return out;
}

Json ParseJson(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    ParseFail(what + ": " + e.what());
  }
}

PathTerm ParseTerm(const Json& t, const std::string& where) {
  if (!t.is_object() || t.size() != 1) {
    ParseFail(where + ": a term is one of {\"poly\":…}, {\"sin\":…}, "
                      "{\"cos\":…}");
  }
  const std::string kind = t.begin().key();
  const Json& body = t.begin().value();
  if (kind == "poly") {
    RejectUnknown(body, {"a", "k"}, where + ".poly");
    if (!body.contains("k") || !body.at("k").is_number_integer() ||
        body.at("k").get<int>() < 0) {
      ParseFail(where + ".poly.k: expected an integer >= 0");
    }
    return PolyTerm{Number(body, "a", where + ".poly", 0.0),
                    body.at("k").get<int>()};
  }
  if (kind == "sin" || kind == "cos") {
    const std::string w = where + "." + kind;
    RejectUnknown(body, {"a", "w", "phi"}, w);
    return TrigTerm{Number(body, "a", w, 0.0),
                    kind == "sin" ? TrigKind::kSin : TrigKind::kCos,
                    Number(body, "w", w, 1.0), Number(body, "phi", w, 0.0)};
  }
  ParseFail(where + ": unknown term kind \"" + kind + "\"");
}

Json TermToJson(const PathTerm& term) {
  if (const auto* p = std::get_if<PolyTerm>(&term)) {
    return {{"poly", {{"a", p->a}, {"k", p->k}}}};
  }
  const auto& t = std::get<TrigTerm>(term);
  return {{t.kind == TrigKind::kSin ? "sin" : "cos",
           {{"a", t.a}, {"w", t.w}, {"phi", t.phi}}}};
}

Json VecToJson(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json ModelJson(const ModelConfig& c) {
  const PlanarCmmsParams& p = c.params;
  return {{"type", "planar_cmms"},
          {"lengths",
           {{"l0", p.l0}, {"l1", p.l1}, {"l2", p.l2}, {"l3", p.l3},
            {"b0", p.b0}}},
          {"masses", {{"m0", p.m0}, {"m1", p.m1}, {"m2", p.m2}, {"m3", p.m3}}},
          {"tau_min", VecToJson(c.limits.tau_min)},
          {"tau_max", VecToJson(c.limits.tau_max)},
          {"elbow_branch", {p.elbow_branch[0], p.elbow_branch[1]}},
          {"gravity", p.gravity}};
}

Json PathJson(const PathFile& p) {
  Json coords = Json::array();
  for (const auto& terms : p.path.coords) {
    Json row = Json::array();
    for (const PathTerm& t : terms) row.push_back(TermToJson(t));
    coords.push_back(std::move(row));
  }
  Json out = {{"coords", std::move(coords)}};
  if (p.boundary) {
    out["sdot_i"] = p.boundary->sdot_i;
    out["sdot_f"] = p.boundary->sdot_f;
  }
  return out;
}

Json Saturated(const std::vector<SatEntry>& sat) {
  Json out = Json::array();
  for (const SatEntry& e : sat) out.push_back({e.index + 1, ToString(e.side)});
  return out;
}

void AppendRow(std::string& out, std::initializer_list<double> values) {
  char buf[32];
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    first = false;
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    out += buf;
  }
}

void AppendVec(std::string& out, const Vec& v) {
  char buf[32];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), ",%.12g", v[i]);
    out += buf;
  }
}

}  // namespace

std::string ReadTextFile(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read file: " + file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::string& file, std::string_view text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write file: " + file);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + file);
}

ModelConfig ParseModelConfig(std::string_view text) {
  const Json j = ParseJson(text, "model config");
  RejectUnknown(j, {"type", "lengths", "masses", "tau_min", "tau_max",
                    "elbow_branch", "gravity"},
                "model");
  if (!j.contains("type") || j.at("type") != "planar_cmms") {
    ParseFail("model.type: only \"planar_cmms\" is supported");
  }
  ModelConfig c;
  PlanarCmmsParams& p = c.params;
  if (j.contains("lengths")) {
    const Json& l = j.at("lengths");
    RejectUnknown(l, {"l0", "l1", "l2", "l3", "b0"}, "model.lengths");
    p.l0 = Number(l, "l0", "model.lengths", p.l0);
    p.l1 = Number(l, "l1", "model.lengths", p.l1);
    p.l2 = Number(l, "l2", "model.lengths", p.l2);
    p.l3 = Number(l, "l3", "model.lengths", p.l3);
    p.b0 = Number(l, "b0", "model.lengths", p.b0);
  }
  if (j.contains("masses")) {
    const Json& m = j.at("masses");
    RejectUnknown(m, {"m0", "m1", "m2", "m3"}, "model.masses");
    p.m0 = Number(m, "m0", "model.masses", p.m0);
    p.m1 = Number(m, "m1", "model.masses", p.m1);
    p.m2 = Number(m, "m2", "model.masses", p.m2);
    p.m3 = Number(m, "m3", "model.masses", p.m3);
  }
  if (j.contains("tau_min")) {
    c.limits.tau_min = NumberArray(j.at("tau_min"), "model.tau_min");
  }
  if (j.contains("tau_max")) {
    c.limits.tau_max = NumberArray(j.at("tau_max"), "model.tau_max");
  }
  if (j.contains("elbow_branch")) {
    const Json& e = j.at("elbow_branch");
    if (!e.is_array() || e.size() != 2) {
      ParseFail("model.elbow_branch: expected two entries");
    }
    for (int i = 0; i < 2; ++i) {
      if (!e[i].is_number_integer() ||
          (e[i].get<int>() != 1 && e[i].get<int>() != -1)) {
        ParseFail("model.elbow_branch: entries must be 1 or -1");
      }
      p.elbow_branch[i] = e[i].get<int>();
    }
  }
  p.gravity = Number(j, "gravity", "model", p.gravity);
  p.Validate();
  c.limits.Validate();
  return c;
}

PathFile ParsePathFile(std::string_view text) {
  const Json j = ParseJson(text, "path file");
  RejectUnknown(j, {"coords", "sdot_i", "sdot_f"}, "path");
  if (!j.contains("coords") || !j.at("coords").is_array() ||
      j.at("coords").empty()) {
    ParseFail("path.coords: expected a non-empty array of term lists");
  }
  PathFile out;
  const Json& coords = j.at("coords");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const std::string where = "path.coords[" + std::to_string(i) + "]";
    if (!coords[i].is_array()) ParseFail(where + ": expected a term list");
    std::vector<PathTerm> terms;
    for (std::size_t k = 0; k < coords[i].size(); ++k) {
      terms.push_back(
          ParseTerm(coords[i][k], where + "[" + std::to_string(k) + "]"));
    }
    out.path.coords.push_back(std::move(terms));
  }
  if (j.contains("sdot_i") != j.contains("sdot_f")) {
    ParseFail("path: sdot_i and sdot_f must be given together");
  }
  if (j.contains("sdot_i")) {
    BoundaryConditions bc{Number(j, "sdot_i", "path", 0.0),
                          Number(j, "sdot_f", "path", 0.0)};
    bc.Validate();
    out.boundary = bc;
  }
  return out;
}

ModelConfig LoadModelConfig(const std::string& name_or_file) {
  if (name_or_file == "planar-cmms" || name_or_file == "planar_cmms") {
    return ModelConfig{};
  }
  return ParseModelConfig(ReadTextFile(name_or_file));
}

PathFile LoadPathFile(const std::string& name_or_file) {
  if (name_or_file == "example1" || name_or_file == "example1-circle") {
    return PathFile{BuiltinPath(name_or_file), BuiltinBoundary(name_or_file)};
  }
  return ParsePathFile(ReadTextFile(name_or_file));
}

std::string ModelConfigToJson(const ModelConfig& config) {
  return ModelJson(config).dump(2) + "\n";
}

std::string PathToJson(const PathFile& path) {
  return PathJson(path).dump(2) + "\n";
}

std::string SolutionToJson(const SolutionCurve& sol) {
  Json j;
  j["procedure"] = ToString(sol.procedure);
  j["gamma"] = sol.gamma;
  j["boundary"] = {{"sdot_i", sol.boundary.sdot_i},
                   {"sdot_f", sol.boundary.sdot_f}};
  Json sw = Json::array();
  for (const SwitchPoint& p : sol.switch_points) {
    sw.push_back({{"s", p.location.s},
                  {"sdot", p.location.sdot},
                  {"kind", ToString(p.kind)},
                  {"from", ToString(p.from)},
                  {"to", ToString(p.to)}});
  }
  j["switch_points"] = std::move(sw);
  Json segs = Json::array();
  for (const EnvelopePiece& piece : sol.segments) {
    Json pts = Json::array();
    for (const CurvePoint& p : piece.points) {
      pts.push_back({p.s, p.sdot, p.sddot});
    }
    segs.push_back({{"sign", ToString(piece.sign)},
                    {"curve", piece.curve},
                    {"points", std::move(pts)}});
  }
  j["segments"] = std::move(segs);
  Json mvc = Json::array();
  for (const MvcSample& m : sol.mvc) mvc.push_back({m.s, m.sdot});
  j["mvc"] = std::move(mvc);
  Json curves = Json::array();
  for (const TrajectorySegment& c : sol.curves) {
    const CurvePoint& a = c.points.front();
    const CurvePoint& b = c.points.back();
    curves.push_back(
        {{"id", c.id},
         {"direction", c.direction == Direction::kForward ? "forward"
                                                           : "backward"},
         {"sign", ToString(c.sense)},
         {"start", {a.s, a.sdot}},
         {"end", {b.s, b.sdot}},
         {"termination", ToString(c.termination)},
         {"points", c.points.size()}});
  }
  j["curves"] = std::move(curves);
  Json zi = Json::array();
  for (const ZeroInertiaPoint& z : sol.zero_inertia) {
    if (!z.feasible) continue;
    zi.push_back({{"s", z.s},
                  {"sdot", z.sdot},
                  {"kind", ToString(z.kind)},
                  {"residual", z.residual}});
  }
  j["zero_inertia"] = std::move(zi);
  Json sc = Json::array();
  for (const PhasePoint& p : sol.smooth_critical) sc.push_back({p.s, p.sdot});
  j["smooth_critical"] = std::move(sc);
  const SolveStats& st = sol.stats;
  j["counters"] = {{"mvc_polygon_builds", st.mvc_polygon_builds},
                   {"refresh_polygon_builds", st.refresh_polygon_builds},
                   {"check_polygon_builds", st.check_polygon_builds},
                   {"lp_calls", st.lp_calls},
                   {"spa_solves", st.spa_solves},
                   {"steps", st.steps}};
  return j.dump(2) + "\n";
}

std::string PolygonToJson(const ConstraintPolygon& poly) {
  Json verts = Json::array();
  for (const PolygonVertex& v : poly.vertices) {
    verts.push_back({{"sdot2", v.sdot2},
                     {"sddot", v.sddot},
                     {"saturated", Saturated(v.saturated)},
                     {"clipped", v.clipped},
                     {"tau", VecToJson(v.tau)}});
  }
  Json j = {{"s", poly.s}, {"vertices", std::move(verts)},
            {"capped", poly.capped()}};
  return j.dump(2) + "\n";
}

std::string MvcToCsv(std::span<const MvcSample> samples) {
  std::string out = "s,sdot\n";
  for (const MvcSample& m : samples) {
    AppendRow(out, {m.s, m.sdot});
    out += '\n';
  }
  return out;
}

std::string TrajectoryToCsv(std::span<const TrajectorySample> samples) {
  std::string out = "t,s,sdot,sddot";
  if (!samples.empty()) {
    const auto& f = samples.front();
    for (Eigen::Index i = 0; i < f.q.size(); ++i) {
      out += ",q" + std::to_string(i + 1);
    }
    for (Eigen::Index i = 0; i < f.qdot.size(); ++i) {
      out += ",qd" + std::to_string(i + 1);
    }
    for (Eigen::Index i = 0; i < f.tau.size(); ++i) {
      out += ",tau" + std::to_string(i + 1);
    }
  }
  out += '\n';
  for (const TrajectorySample& smp : samples) {
    AppendRow(out, {smp.t, smp.s, smp.sdot, smp.sddot});
    AppendVec(out, smp.q);
    AppendVec(out, smp.qdot);
    AppendVec(out, smp.tau);
    out += '\n';
  }
  return out;
}

std::string DescribeToJson(const ModelConfig& config, const PathFile& path) {
  const PlanarCmms model(config.params, config.limits);
  const ModelDims& d = model.dims();
  Json j;
  j["model"] = ModelJson(config);
  j["dims"] = {{"n", d.n}, {"p", d.p}, {"m", d.m}, {"r", d.r}, {"v", d.v}};
  j["path"] = PathJson(path);
  Json ends = Json::array();
  for (double s : {0.0, 1.0}) {
    const PathPoint pp = EvaluatePath(path.path, s);
    Json e = {{"s", s}, {"pose", VecToJson(pp.f)}};
    try {
      e["q"] = VecToJson(model.InverseKinematics(pp.f));
    } catch (const Error& err) {
      e["q"] = nullptr;
      e["error"] = err.what();
    }
    ends.push_back(std::move(e));
  }
  j["path_ends"] = std::move(ends);
  return j.dump(2) + "\n";
}

}  // namespace topp
