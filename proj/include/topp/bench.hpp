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

#include <string>

#include "topp/model.hpp"
#include "topp/path.hpp"
#include "topp/phaseplane.hpp"

namespace topp {

struct BenchTiming {
  double mvc_seconds = 0.0;
  double solution_seconds = 0.0;  // everything outside MVC sampling
  double total_seconds = 0.0;
};

struct BenchReport {
  int repeat = 0;
  BenchTiming spa;       // pattern reuse, MVC only where needed
  BenchTiming baseline;  // full MVC, LP at every integration step
  double reduction_percent = 0.0;
  double envelope_deviation = 0.0;  // max |sdot_spa - sdot_lp|
  double gamma_spa = 0.0;
  double gamma_baseline = 0.0;
  SolveStats spa_stats;
  SolveStats baseline_stats;
};

// Max pointwise sdot difference, each envelope interpolated at the other's
// vertices.
double EnvelopeDeviation(const SolutionCurve& a, const SolutionCurve& b);

// Median-of-`repeat` timings for both methods. Throws kBenchmarkMismatch
// when the envelopes differ by more than `tolerance`.
BenchReport RunBench(const RobotModel& model, const PathSpec& path,
                     const BoundaryConditions& bc, const SolveOptions& options,
                     int repeat, double tolerance = 1e-6);

std::string BenchReportToJson(const BenchReport& report);

}  // namespace topp
