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
#include <string_view>

#include "topp/model.hpp"
#include "topp/path.hpp"
#include "topp/phaseplane.hpp"
#include "topp/polygon.hpp"

namespace topp {

struct ModelConfig {
  PlanarCmmsParams params;
  TorqueLimits limits = PlanarCmmsDefaultLimits();
};

struct PathFile {
  PathSpec path;
  std::optional<BoundaryConditions> boundary;
};

// Throws kIo naming the file when it cannot be read.
std::string ReadTextFile(const std::string& file);
void WriteTextFile(const std::string& file, std::string_view text);

// JSON parsers reject unknown keys and malformed values with kParse.
ModelConfig ParseModelConfig(std::string_view json);
PathFile ParsePathFile(std::string_view json);

// "planar-cmms" or a JSON file; builtin path names or a JSON file.
ModelConfig LoadModelConfig(const std::string& name_or_file);
PathFile LoadPathFile(const std::string& name_or_file);

std::string ModelConfigToJson(const ModelConfig& config);
std::string PathToJson(const PathFile& path);

// Outputs carry no wall-clock data so that identical inputs give identical
// bytes. Actuator indices in outputs are 1-based.
std::string SolutionToJson(const SolutionCurve& solution);
std::string PolygonToJson(const ConstraintPolygon& polygon);
std::string MvcToCsv(std::span<const MvcSample> samples);
std::string TrajectoryToCsv(std::span<const TrajectorySample> samples);
std::string DescribeToJson(const ModelConfig& model, const PathFile& path);

}  // namespace topp
