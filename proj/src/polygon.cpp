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

#include "topp/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <unordered_set>

#include "topp/error.hpp"

namespace topp {
namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kBasisDetRel = 1e-8;
constexpr double kCandidateTol = 1e-7;
constexpr double kBoundTol = 1e-9;
constexpr double kParallelRel = 1e-14;

struct Candidate {
  std::vector<SatEntry> saturated;
  std::vector<int> free;
  double sdot2 = 0.0;
  double sddot = 0.0;
  bool clipped = false;
};

double BoundOf(const TorqueLimits& limits, int j, BoundSide side) {
  return side == BoundSide::kLower ? limits.tau_min[j] : limits.tau_max[j];
}

// Re-solves a candidate in the original coordinates so that the same vertex
// found through different bases lands on the same floating-point values.
bool Polish(const ReducedPathDynamics& rd, const TorqueLimits& limits,
            double sdot2_cap, Candidate& cand, PolygonVertex* out) {
  const int k = rd.rows();
  const int m = rd.actuators();
  SmallMat a(k, k);
  SmallVec rhs = -rd.e;
  Vec tau = Vec::Zero(m);
  for (const SatEntry& e : cand.saturated) {
    tau[e.index] = BoundOf(limits, e.index, e.side);
    rhs += rd.B.col(e.index) * tau[e.index];
  }
  int col = 0;
  a.col(col++) = rd.c;
  if (cand.clipped) {
    rhs -= rd.d * cand.sdot2;
  } else {
    a.col(col++) = rd.d;
  }
  for (int j : cand.free) a.col(col++) = -rd.B.col(j);
  double scale = 1.0;
  for (int i = 0; i < k; ++i) scale *= std::max(a.col(i).norm(), 1e-300);
  const Eigen::PartialPivLU<SmallMat> lu(a);
  if (std::abs(lu.determinant()) > 1e-13 * scale) {
    const SmallVec z = lu.solve(rhs);
    cand.sddot = z[0];
    if (!cand.clipped) cand.sdot2 = z[1];
    const int off = cand.clipped ? 1 : 2;
    for (std::size_t i = 0; i < cand.free.size(); ++i) {
      tau[cand.free[i]] = z[off + i];
    }
  } else {
    // Degenerate system: fall back to a least-squares torque at the point.
    const Vec r = rd.c * cand.sddot + rd.d * cand.sdot2 + rd.e -
                  [&] {
                    Vec bs = Vec::Zero(k);
                    for (const SatEntry& e : cand.saturated) {
                      bs += rd.B.col(e.index) * tau[e.index];
                    }
                    return bs;
                  }();
    Mat bf(k, cand.free.size());
    for (std::size_t i = 0; i < cand.free.size(); ++i) {
      bf.col(i) = rd.B.col(cand.free[i]);
    }
    const Vec tf = bf.completeOrthogonalDecomposition().solve(r);
    for (std::size_t i = 0; i < cand.free.size(); ++i) {
      tau[cand.free[i]] = tf[i];
    }
  }
  if (cand.sdot2 < -1e-12 || cand.sdot2 > sdot2_cap * (1.0 + 1e-12)) {
    return false;
  }
  PolygonVertex v;
  v.sdot2 = std::clamp(cand.sdot2, 0.0, sdot2_cap);
  v.sddot = cand.sddot;
  v.clipped = cand.clipped;
  for (int j = 0; j < m; ++j) {
    if (tau[j] < limits.tau_min[j] - kBoundTol ||
        tau[j] > limits.tau_max[j] + kBoundTol) {
      return false;
    }
    if (std::abs(tau[j] - limits.tau_min[j]) <= kBoundTol) {
      tau[j] = limits.tau_min[j];
      v.saturated.push_back({j, BoundSide::kLower});
    } else if (std::abs(tau[j] - limits.tau_max[j]) <= kBoundTol) {
      tau[j] = limits.tau_max[j];
      v.saturated.push_back({j, BoundSide::kUpper});
    }
  }
  v.tau = std::move(tau);
  *out = std::move(v);
  return true;
}

std::vector<SatEntry> Union(const std::vector<SatEntry>& a,
                            const std::vector<SatEntry>& b) {
  std::vector<SatEntry> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

std::vector<SatEntry> Common(const std::vector<SatEntry>& a,
                             const std::vector<SatEntry>& b) {
  std::vector<SatEntry> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

double Cross(const PolygonVertex& o, const PolygonVertex& a,
             const PolygonVertex& b) {
  return (a.sdot2 - o.sdot2) * (b.sddot - o.sddot) -
         (a.sddot - o.sddot) * (b.sdot2 - o.sdot2);
}

// Treats nearly collinear triples as collinear (sine below 1e-12).
bool TurnsLeft(const PolygonVertex& o, const PolygonVertex& a,
               const PolygonVertex& b) {
  const double la = std::hypot(a.sdot2 - o.sdot2, a.sddot - o.sddot);
  const double lb = std::hypot(b.sdot2 - o.sdot2, b.sddot - o.sddot);
  return Cross(o, a, b) > 1e-12 * la * lb;
}

std::vector<PolygonVertex> Hull(std::vector<PolygonVertex> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.sdot2 != b.sdot2 ? a.sdot2 < b.sdot2 : a.sddot < b.sddot;
  });
  if (pts.size() < 3) return pts;
  std::vector<PolygonVertex> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && !TurnsLeft(h[k - 2], h[k - 1], pts[i])) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && !TurnsLeft(h[k - 2], h[k - 1], pts[i - 1])) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

std::vector<std::vector<int>> AllSubsets(int m, int k) {
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

SaturationPattern PatternFromSet(const ConstraintPolygon& poly, double sdot,
                                 double sddot,
                                 const std::vector<SatEntry>& set,
                                 const std::vector<SatEntry>& fallback,
                                 AccelSense sense, bool* ok) {
  const int m = poly.dynamics.actuators();
  const int need = m - poly.dynamics.rows() + 1;
  SaturationPattern p;
  if (static_cast<int>(set.size()) == need) {
    std::vector<bool> seen(m, false);
    bool distinct = true;
    for (const SatEntry& e : set) {
      if (seen[e.index]) distinct = false;
      seen[e.index] = true;
    }
    if (distinct) {
      *ok = true;
      return MakePattern(set, m);
    }
  }
  *ok = SelectPattern(poly.dynamics, sdot, sddot, set, poly.limits, sense, &p);
  if (!*ok) {
    *ok = SelectPattern(poly.dynamics, sdot, sddot, fallback, poly.limits,
                        sense, &p);
  }
  return p;
}

}  // namespace

NormalizedDynamics Normalize(const ReducedPathDynamics& rd,
                             std::vector<int> basis) {
  const int k = rd.rows();
  const int m = rd.actuators();
  std::sort(basis.begin(), basis.end());
  Mat ba(k, k);
  for (int i = 0; i < k; ++i) ba.col(i) = rd.B.col(basis[i]);
  const Eigen::PartialPivLU<Mat> lu(ba);
  double scale = 1.0;
  for (int i = 0; i < k; ++i) scale *= ba.col(i).norm();
  if (!(scale > 0.0) || std::abs(lu.determinant()) < 1e-12 * scale) {
    throw Error(ErrorCode::kSingularPattern, "basis columns are dependent");
  }
  NormalizedDynamics nd;
  nd.s = rd.s;
  std::vector<bool> in(m, false);
  for (int j : basis) in[j] = true;
  for (int j = 0; j < m; ++j) {
    if (!in[j]) nd.complement.push_back(j);
  }
  Mat bb(k, static_cast<int>(nd.complement.size()));
  for (std::size_t i = 0; i < nd.complement.size(); ++i) {
    bb.col(i) = rd.B.col(nd.complement[i]);
  }
  nd.cbar = lu.solve(rd.c);
  nd.dbar = lu.solve(rd.d);
  nd.ebar = lu.solve(rd.e);
  nd.Bbar = lu.solve(bb);
  nd.basis = std::move(basis);
  return nd;
}

NormalizedDynamics ChooseBasis(const ReducedPathDynamics& rd) {
  const int k = rd.rows();
  const int m = rd.actuators();
  Mat a = rd.B;
  std::vector<bool> used(m, false);
  std::vector<int> basis;
  for (int r = 0; r < k; ++r) {
    int br = -1, bc = -1;
    double best = 0.0;
    for (int c = 0; c < m; ++c) {
      if (used[c]) continue;
      for (int i = r; i < k; ++i) {
        if (std::abs(a(i, c)) > best) {
          best = std::abs(a(i, c));
          br = i;
          bc = c;
        }
      }
    }
    if (best < kPivotTol) {
      throw Error(ErrorCode::kRankDeficient,
                  "actuation matrix is rank deficient at s=" +
                      std::to_string(rd.s));
    }
    a.row(r).swap(a.row(br));
    for (int i = r + 1; i < k; ++i) {
      a.row(i) -= (a(i, bc) / a(r, bc)) * a.row(r);
    }
    used[bc] = true;
    basis.push_back(bc);
  }
  return Normalize(rd, std::move(basis));
}

namespace {

// Steps over the bound choices of tau_b for one basis and reports every
// line intersection whose remaining tau_a rows stay within limits.
// `fresh(key)` filters bound assignments already handled through another
// basis before any allocation happens.
template <typename Fresh, typename Emit>
void EnumerateBasis(const NormalizedDynamics& nd, const TorqueLimits& limits,
                    double sdot2_cap, Fresh&& fresh, Emit&& emit) {
  const int k = static_cast<int>(nd.basis.size());
  const int nb = static_cast<int>(nd.complement.size());
  SmallVec g(k);
  SmallVec lo(k), hi(k);
  for (int i = 0; i < k; ++i) {
    lo[i] = limits.tau_min[nd.basis[i]];
    hi[i] = limits.tau_max[nd.basis[i]];
  }
  const double cscale = std::max(nd.cbar.cwiseAbs().maxCoeff(), 1e-300);
  SmallVec tb(nb);
  std::vector<SatEntry> base_sat(nb);

  auto others_feasible = [&](double y, double x, int skip1, int skip2) {
    for (int i = 0; i < k; ++i) {
      if (i == skip1 || i == skip2) continue;
      const double ta = nd.cbar[i] * y + nd.dbar[i] * x - g[i];
      const double tol = kCandidateTol * std::max(1.0, hi[i] - lo[i]);
      if (ta < lo[i] - tol || ta > hi[i] + tol) return false;
    }
    return true;
  };
  auto side_of = [](int bit) {
    return bit ? BoundSide::kUpper : BoundSide::kLower;
  };
  // Two bits per actuator (1 lower, 2 upper) and two clip bits.
  auto key_bits = [](int actuator, int bit) {
    return std::uint64_t{bit ? 2u : 1u} << (2 * actuator + 2);
  };
  std::uint64_t base_key = 0;

  for (int mask = 0; mask < (1 << nb); ++mask) {
    for (int j = 0; j < nb; ++j) {
      base_sat[j] = {nd.complement[j], side_of((mask >> j) & 1)};
      tb[j] = BoundOf(limits, nd.complement[j], base_sat[j].side);
    }
    base_key = 0;
    for (int j = 0; j < nb; ++j) {
      base_key |= key_bits(nd.complement[j], (mask >> j) & 1);
    }
    // Line i: cbar_i*sddot + dbar_i*sdot2 = tau_a_i + g_i.
    g = -nd.ebar;
    if (nb) g.noalias() += nd.Bbar * tb;
    for (int i = 0; i < k; ++i) {
      for (int si = 0; si < 2; ++si) {
        const double ri = (si ? hi[i] : lo[i]) + g[i];
        for (int i2 = i + 1; i2 < k; ++i2) {
          const double det =
              nd.cbar[i] * nd.dbar[i2] - nd.dbar[i] * nd.cbar[i2];
          const double ref = std::sqrt(
              (nd.cbar[i] * nd.cbar[i] + nd.dbar[i] * nd.dbar[i]) *
              (nd.cbar[i2] * nd.cbar[i2] + nd.dbar[i2] * nd.dbar[i2]));
          if (!(std::abs(det) > kParallelRel * ref)) continue;
          for (int si2 = 0; si2 < 2; ++si2) {
            const double ri2 = (si2 ? hi[i2] : lo[i2]) + g[i2];
            const double y = (ri * nd.dbar[i2] - nd.dbar[i] * ri2) / det;
            const double x = (nd.cbar[i] * ri2 - ri * nd.cbar[i2]) / det;
            if (x < -1e-9 * std::max(1.0, std::abs(x)) ||
                x > sdot2_cap * (1.0 + 1e-9)) {
              continue;
            }
            if (!others_feasible(y, x, i, i2)) continue;
            const std::uint64_t key = base_key | key_bits(nd.basis[i], si) |
                                      key_bits(nd.basis[i2], si2);
            if (!fresh(key)) continue;
            Candidate c;
            c.saturated = base_sat;
            c.saturated.push_back({nd.basis[i], side_of(si)});
            c.saturated.push_back({nd.basis[i2], side_of(si2)});
            for (int f = 0; f < k; ++f) {
              if (f != i && f != i2) c.free.push_back(nd.basis[f]);
            }
            c.sdot2 = x;
            c.sddot = y;
            emit(std::move(c));
          }
        }
        // Clipping against sdot2 = 0 and sdot2 = cap.
        if (!(std::abs(nd.cbar[i]) > kParallelRel * cscale)) continue;
        for (const double x0 : {0.0, sdot2_cap}) {
          const double y = (ri - nd.dbar[i] * x0) / nd.cbar[i];
          if (!others_feasible(y, x0, i, -1)) continue;
          const std::uint64_t key = base_key | key_bits(nd.basis[i], si) |
                                    (x0 == 0.0 ? 1u : 2u);
          if (!fresh(key)) continue;
          Candidate c;
          c.saturated = base_sat;
          c.saturated.push_back({nd.basis[i], side_of(si)});
          for (int f = 0; f < k; ++f) {
            if (f != i) c.free.push_back(nd.basis[f]);
          }
          c.sdot2 = x0;
          c.sddot = y;
          c.clipped = true;
          emit(std::move(c));
        }
      }
    }
  }
}

// Bases are taken best-conditioned first until every (k-1)-subset of
// actuators, the free set of a clipped vertex, lies inside one of them.
std::vector<std::vector<int>> CoveringBases(const ReducedPathDynamics& rd,
                                            const std::vector<int>& first) {
  const int k = rd.rows();
  const int m = rd.actuators();
  struct Scored {
    std::vector<int> basis;
    double score;
  };
  std::vector<Scored> scored;
  for (std::vector<int>& basis : AllSubsets(m, k)) {
    if (basis == first) continue;
    SmallMat ba(k, k);
    double scale = 1.0;
    for (int i = 0; i < k; ++i) {
      ba.col(i) = rd.B.col(basis[i]);
      scale *= ba.col(i).norm();
    }
    if (!(scale > 0.0)) continue;
    const double score = std::abs(ba.partialPivLu().determinant()) / scale;
    if (score >= kBasisDetRel) scored.push_back({std::move(basis), score});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const Scored& a, const Scored& b) {
                     return a.score > b.score;
                   });
  std::vector<std::vector<int>> family{first};
  std::set<std::vector<int>> covered;
  auto cover = [&](const std::vector<int>& basis) {
    bool added = false;
    for (const std::vector<int>& sub : AllSubsets(k, k - 1)) {
      std::vector<int> free;
      for (int i : sub) free.push_back(basis[i]);
      added |= covered.insert(std::move(free)).second;
    }
    return added;
  };
  cover(first);
  const std::size_t target = AllSubsets(m, k - 1).size();
  for (const Scored& sc : scored) {
    if (covered.size() == target) break;
    if (cover(sc.basis)) family.push_back(sc.basis);
  }
  return family;
}

}  // namespace

std::vector<PolygonVertex> BasisVertices(const NormalizedDynamics& nd,
                                         const ReducedPathDynamics& rd,
                                         const TorqueLimits& limits,
                                         double sdot2_cap) {
  std::vector<PolygonVertex> out;
  EnumerateBasis(
      nd, limits, sdot2_cap, [](std::uint64_t) { return true; },
      [&](Candidate c) {
    std::sort(c.saturated.begin(), c.saturated.end());
    PolygonVertex v;
    if (Polish(rd, limits, sdot2_cap, c, &v)) out.push_back(std::move(v));
  });
  return out;
}

ConstraintPolygon BuildPolygon(const ReducedPathDynamics& rd,
                               const TorqueLimits& limits,
                               const PolygonOptions& options) {
  if (limits.size() != rd.actuators()) {
    throw Error(ErrorCode::kInvalidArgument,
                "torque limits do not match the actuator count");
  }
  const NormalizedDynamics first = ChooseBasis(rd);
  // A single basis only reaches vertices whose free actuators lie in B_a;
  // further bases complete the vertex set.
  std::vector<PolygonVertex> pts;
  std::unordered_set<std::uint64_t> seen;
  auto fresh = [&](std::uint64_t key) { return seen.insert(key).second; };
  auto take = [&](Candidate c) {
    std::sort(c.saturated.begin(), c.saturated.end());
    PolygonVertex v;
    if (Polish(rd, limits, options.sdot2_cap, c, &v)) {
      pts.push_back(std::move(v));
    }
  };
  for (const std::vector<int>& basis : CoveringBases(rd, first.basis)) {
    if (basis == first.basis) {
      EnumerateBasis(first, limits, options.sdot2_cap, fresh, take);
    } else {
      EnumerateBasis(Normalize(rd, basis), limits, options.sdot2_cap, fresh,
                     take);
    }
  }

  std::vector<PolygonVertex> merged;
  for (PolygonVertex& v : pts) {
    bool dup = false;
    for (PolygonVertex& w : merged) {
      if (std::abs(v.sdot2 - w.sdot2) <= options.dedup_tol &&
          std::abs(v.sddot - w.sddot) <= options.dedup_tol) {
        w.saturated = Union(w.saturated, v.saturated);
        if (w.clipped && !v.clipped) {
          w.sdot2 = v.sdot2;
          w.sddot = v.sddot;
          w.tau = v.tau;
        }
        w.clipped = w.clipped && v.clipped;
        dup = true;
        break;
      }
    }
    if (!dup) merged.push_back(std::move(v));
  }

  ConstraintPolygon poly;
  poly.s = rd.s;
  poly.sdot2_cap = options.sdot2_cap;
  poly.dynamics = rd;
  poly.limits = limits;
  poly.vertices = Hull(std::move(merged));
  return poly;
}

double ConstraintPolygon::MaxSdot2() const {
  if (vertices.empty()) {
    throw Error(ErrorCode::kEmptyPolygon,
                "no feasible torque at s=" + std::to_string(s));
  }
  double x = 0.0;
  for (const PolygonVertex& v : vertices) x = std::max(x, v.sdot2);
  return x;
}

bool ConstraintPolygon::capped() const {
  return !vertices.empty() && MaxSdot2() >= sdot2_cap * (1.0 - 1e-12);
}

MvcValue MvcVelocity(const ConstraintPolygon& poly) {
  MvcValue v;
  v.sdot = std::sqrt(poly.MaxSdot2());
  v.capped = poly.capped();
  return v;
}

ExtremalAccels ExtremalAcc(const ConstraintPolygon& poly, double sdot) {
  if (poly.empty()) {
    throw Error(ErrorCode::kEmptyPolygon,
                "no feasible torque at s=" + std::to_string(poly.s));
  }
  if (!(sdot >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sdot must be non-negative");
  }
  const double x = sdot * sdot;
  const double tol = 1e-12 * std::max(1.0, x);
  if (x > poly.MaxSdot2() + tol) {
    throw Error(ErrorCode::kVelocityInfeasible,
                "sdot=" + std::to_string(sdot) + " is above the MVC at s=" +
                    std::to_string(poly.s));
  }
  struct Hit {
    double y;
    std::vector<SatEntry> set;
    std::vector<SatEntry> fallback;
  };
  std::vector<Hit> hits;
  const auto& vs = poly.vertices;
  const std::size_t n = vs.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(vs[i].sdot2 - x) <= tol) {
      hits.push_back({vs[i].sddot, vs[i].saturated, vs[i].saturated});
    }
  }
  for (std::size_t i = 0; i < n && n > 1; ++i) {
    const PolygonVertex& a = vs[i];
    const PolygonVertex& b = vs[(i + 1) % n];
    const double lo = std::min(a.sdot2, b.sdot2);
    const double hi = std::max(a.sdot2, b.sdot2);
    if (!(x > lo + tol && x < hi - tol)) continue;
    const double t = (x - a.sdot2) / (b.sdot2 - a.sdot2);
    hits.push_back({a.sddot + t * (b.sddot - a.sddot),
                    Common(a.saturated, b.saturated),
                    Union(a.saturated, b.saturated)});
  }
  if (hits.empty()) {
    // Numerically just past the rightmost vertex.
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (vs[i].sdot2 > vs[best].sdot2) best = i;
    }
    hits.push_back({vs[best].sddot, vs[best].saturated, vs[best].saturated});
  }
  auto [lo_it, hi_it] = std::minmax_element(
      hits.begin(), hits.end(),
      [](const Hit& a, const Hit& b) { return a.y < b.y; });
  // Among hits tied with the extreme, pool the sets for the tie-break.
  auto pooled = [&](double y, std::vector<SatEntry> set,
                    std::vector<SatEntry> fallback) {
    for (const Hit& h : hits) {
      if (std::abs(h.y - y) <= 1e-12 * std::max(1.0, std::abs(y)) &&
          h.set != set) {
        fallback = Union(fallback, h.fallback);
      }
    }
    return std::pair(std::move(set), std::move(fallback));
  };
  ExtremalAccels out;
  out.sddot_max = hi_it->y;
  out.sddot_min = lo_it->y;
  {
    auto [set, fb] = pooled(hi_it->y, hi_it->set, hi_it->fallback);
    out.pattern_max = PatternFromSet(poly, sdot, out.sddot_max, set, fb,
                                     AccelSense::kMax, &out.has_pattern_max);
  }
  {
    auto [set, fb] = pooled(lo_it->y, lo_it->set, lo_it->fallback);
    out.pattern_min = PatternFromSet(poly, sdot, out.sddot_min, set, fb,
                                     AccelSense::kMin, &out.has_pattern_min);
  }
  return out;
}

bool Contains(const ConstraintPolygon& poly, double sdot2, double sddot,
              double tol) {
  const auto& vs = poly.vertices;
  const std::size_t n = vs.size();
  if (n == 0) return false;
  if (n == 1) {
    return std::abs(vs[0].sdot2 - sdot2) <= tol &&
           std::abs(vs[0].sddot - sddot) <= tol;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const PolygonVertex& a = vs[i];
    const PolygonVertex& b = vs[(i + 1) % n];
    const double ex = b.sdot2 - a.sdot2;
    const double ey = b.sddot - a.sddot;
    const double len = std::hypot(ex, ey);
    if (len == 0.0) continue;
    const double cross = ex * (sddot - a.sddot) - ey * (sdot2 - a.sdot2);
    if (cross / len < -tol) return false;
  }
  return true;
}

}  // namespace topp
