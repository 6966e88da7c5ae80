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

#include "topp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "topp/error.hpp"

namespace topp {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;
constexpr double kFeasTol = 1e-9;
constexpr double kBoundSnap = 1e-9;

class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), t_((rows + 1) * (cols + 1), 0.0) {}

  double& at(int r, int c) { return t_[r * (cols_ + 1) + c]; }
  double at(int r, int c) const { return t_[r * (cols_ + 1) + c]; }
  double& rhs(int r) { return at(r, cols_); }
  double& cost(int c) { return at(rows_, c); }

  void Pivot(int pr, int pc) {
    const double inv = 1.0 / at(pr, pc);
    for (int c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (int c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_, cols_;
  std::vector<double> t_;
};

enum class IterResult { kOptimal, kUnbounded };

// Bland's rule: lowest-index improving column, lowest-index leaving basic
// variable among ratio ties.
IterResult RunSimplex(Tableau& t, std::vector<int>& basis, int usable_cols) {
  const int max_iter = 50 * (t.rows() + t.cols()) + 100;
  for (int iter = 0; iter < max_iter; ++iter) {
    int enter = -1;
    for (int c = 0; c < usable_cols; ++c) {
      if (t.cost(c) < -kCostTol) {
        enter = c;
        break;
      }
    }
    if (enter < 0) return IterResult::kOptimal;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < t.rows(); ++r) {
      if (basis[r] < 0) continue;
      const double a = t.at(r, enter);
      if (a <= kPivotTol) continue;
      const double ratio = t.rhs(r) / a;
      const double tie = 1e-12 * std::max(1.0, std::abs(best));
      if (leave < 0 || ratio < best - tie ||
          (ratio <= best + tie && basis[r] < basis[leave])) {
        best = ratio;
        leave = r;
      }
    }
    if (leave < 0) return IterResult::kUnbounded;
    t.Pivot(leave, enter);
    basis[leave] = enter;
  }
  throw Error(ErrorCode::kInfeasibleLp, "simplex iteration limit reached");
}

struct BoxedLp {
  Mat free_cols;     // k x nf, unrestricted variables
  Mat nonneg_cols;   // k x nn, variables >= 0
  Mat tau_cols;      // k x m
  Vec rhs;           // k
  Vec free_cost;     // nf
  Vec nonneg_cost;   // nn
};

struct BoxedResult {
  LpStatus status = LpStatus::kInfeasible;
  Vec free_vars;
  Vec nonneg_vars;
  Vec tau;
};

BoxedResult SolveBoxed(const BoxedLp& p, const TorqueLimits& limits) {
  const int k = static_cast<int>(p.rhs.size());
  const int nf = static_cast<int>(p.free_cols.cols());
  const int nn = static_cast<int>(p.nonneg_cols.cols());
  const int m = static_cast<int>(p.tau_cols.cols());
  const int nvar = 2 * nf + nn + 2 * m;
  StandardFormLp lp;
  lp.A = Mat::Zero(k + m, nvar);
  lp.b = Vec::Zero(k + m);
  lp.cost = Vec::Zero(nvar);
  if (nf) {
    lp.A.block(0, 0, k, nf) = p.free_cols;
    lp.A.block(0, nf, k, nf) = -p.free_cols;
    lp.cost.segment(0, nf) = p.free_cost;
    lp.cost.segment(nf, nf) = -p.free_cost;
  }
  if (nn) {
    lp.A.block(0, 2 * nf, k, nn) = p.nonneg_cols;
    lp.cost.segment(2 * nf, nn) = p.nonneg_cost;
  }
  const int u0 = 2 * nf + nn;
  const int w0 = u0 + m;
  lp.A.block(0, u0, k, m) = p.tau_cols;
  lp.b.head(k) = p.rhs - p.tau_cols * limits.tau_min;
  for (int j = 0; j < m; ++j) {
    lp.A(k + j, u0 + j) = 1.0;
    lp.A(k + j, w0 + j) = 1.0;
    lp.b[k + j] = limits.tau_max[j] - limits.tau_min[j];
  }
  const LpSolution sol = SolveStandardForm(lp);
  BoxedResult out;
  out.status = sol.status;
  if (sol.status != LpStatus::kOptimal) return out;
  out.free_vars = sol.z.segment(0, nf) - sol.z.segment(nf, nf);
  out.nonneg_vars = sol.z.segment(2 * nf, nn);
  out.tau = limits.tau_min + sol.z.segment(u0, m);
  for (int j = 0; j < m; ++j) {
    if (std::abs(out.tau[j] - limits.tau_min[j]) <= kBoundSnap) {
      out.tau[j] = limits.tau_min[j];
    } else if (std::abs(out.tau[j] - limits.tau_max[j]) <= kBoundSnap) {
      out.tau[j] = limits.tau_max[j];
    }
  }
  return out;
}

}  // namespace

LpSolution SolveStandardForm(const StandardFormLp& lp) {
  const int rows = static_cast<int>(lp.A.rows());
  const int n = static_cast<int>(lp.A.cols());
  Tableau t(rows, n + rows);
  std::vector<int> basis(rows);
  double bscale = 1.0;
  for (int r = 0; r < rows; ++r) {
    const double flip = lp.b[r] < 0.0 ? -1.0 : 1.0;
    for (int c = 0; c < n; ++c) t.at(r, c) = flip * lp.A(r, c);
    t.at(r, n + r) = 1.0;
    t.rhs(r) = flip * lp.b[r];
    bscale = std::max(bscale, std::abs(lp.b[r]));
    basis[r] = n + r;
  }
  // Phase 1: minimize the sum of artificials.
  for (int c = 0; c < n; ++c) {
    double sum = 0.0;
    for (int r = 0; r < rows; ++r) sum += t.at(r, c);
    t.cost(c) = -sum;
  }
  double total = 0.0;
  for (int r = 0; r < rows; ++r) total += t.rhs(r);
  t.cost(n + rows) = -total;
  RunSimplex(t, basis, n);

  LpSolution sol;
  if (-t.cost(n + rows) > kFeasTol * bscale) {
    sol.status = LpStatus::kInfeasible;
    return sol;
  }
  // Drive remaining artificials out of the basis; drop redundant rows.
  for (int r = 0; r < rows; ++r) {
    if (basis[r] < n) continue;
    int col = -1;
    double best = 1e-9;
    for (int c = 0; c < n; ++c) {
      if (std::abs(t.at(r, c)) > best) {
        best = std::abs(t.at(r, c));
        col = c;
      }
    }
    if (col >= 0) {
      t.Pivot(r, col);
      basis[r] = col;
    } else {
      basis[r] = -1;
    }
  }
  // Phase 2 reduced costs.
  for (int c = 0; c <= n + rows; ++c) t.cost(c) = 0.0;
  for (int c = 0; c < n; ++c) t.cost(c) = lp.cost[c];
  for (int r = 0; r < rows; ++r) {
    if (basis[r] < 0) continue;
    const double cb = lp.cost[basis[r]];
    if (cb == 0.0) continue;
    for (int c = 0; c < n; ++c) t.cost(c) -= cb * t.at(r, c);
    t.cost(n + rows) -= cb * t.rhs(r);
  }
  if (RunSimplex(t, basis, n) == IterResult::kUnbounded) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }
  sol.status = LpStatus::kOptimal;
  sol.z = Vec::Zero(n);
  for (int r = 0; r < rows; ++r) {
    if (basis[r] >= 0 && basis[r] < n) sol.z[basis[r]] = std::max(0.0, t.rhs(r));
  }
  sol.objective = lp.cost.dot(sol.z);
  sol.basis = std::move(basis);
  return sol;
}

LpExtremum LpExtremalAcc(const ReducedPathDynamics& rd, double sdot,
                         AccelSense sense, const TorqueLimits& limits) {
  BoxedLp p;
  p.free_cols = rd.c;
  p.nonneg_cols = Mat(rd.rows(), 0);
  p.tau_cols = -rd.B;
  p.rhs = -rd.d * (sdot * sdot) - rd.e;
  p.free_cost = Vec::Constant(1, sense == AccelSense::kMax ? -1.0 : 1.0);
  p.nonneg_cost = Vec(0);
  const BoxedResult r = SolveBoxed(p, limits);
  if (r.status == LpStatus::kInfeasible) {
    throw Error(ErrorCode::kInfeasibleLp,
                "no torque balances the system at s=" + std::to_string(rd.s) +
                    ", sdot=" + std::to_string(sdot));
  }
  if (r.status == LpStatus::kUnbounded) {
    throw Error(ErrorCode::kUnboundedLp, "path acceleration is unbounded");
  }
  LpExtremum out;
  out.sddot = r.free_vars[0];
  out.tau = r.tau;
  for (int j = 0; j < rd.actuators(); ++j) {
    if (out.tau[j] == limits.tau_min[j]) {
      out.at_bounds.push_back({j, BoundSide::kLower});
    } else if (out.tau[j] == limits.tau_max[j]) {
      out.at_bounds.push_back({j, BoundSide::kUpper});
    }
  }
  out.has_pattern = SelectPattern(rd, sdot, out.sddot, out.at_bounds, limits,
                                  sense, &out.pattern);
  return out;
}

bool LpFeasible(const ReducedPathDynamics& rd, double sdot2, double sddot,
                const TorqueLimits& limits) {
  BoxedLp p;
  p.free_cols = Mat(rd.rows(), 0);
  p.nonneg_cols = Mat(rd.rows(), 0);
  p.tau_cols = -rd.B;
  p.rhs = -(rd.c * sddot + rd.d * sdot2 + rd.e);
  p.free_cost = Vec(0);
  p.nonneg_cost = Vec(0);
  return SolveBoxed(p, limits).status == LpStatus::kOptimal;
}

std::optional<double> LpMaxSdot2(const ReducedPathDynamics& rd,
                                 const TorqueLimits& limits) {
  BoxedLp p;
  p.free_cols = rd.c;
  p.nonneg_cols = rd.d;
  p.tau_cols = -rd.B;
  p.rhs = -rd.e;
  p.free_cost = Vec::Zero(1);
  p.nonneg_cost = Vec::Constant(1, -1.0);
  const BoxedResult r = SolveBoxed(p, limits);
  if (r.status == LpStatus::kInfeasible) return std::nullopt;
  if (r.status == LpStatus::kUnbounded) {
    return std::numeric_limits<double>::infinity();
  }
  return r.nonneg_vars[0];
}

}  // namespace topp
