// Copyright 2026-present the pivex authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "pivex/dataset.hpp"

namespace pivex {

// Pivot-plane geometry. p0 sits at (0, 0) and p1 at (K, 0); every other
// object is placed on the upper half-plane at the point that preserves its
// distances to both pivots.

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;  // >= 0
};

/// The five known distances around an unknown d(q, s):
/// a = d(q,p0), b = d(q,p1), c = d(s,p0), d = d(s,p1), k = d(p0,p1).
struct QuadDistances {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double k = 0.0;
};

/// Relative slack allowed when checking the triangle (dp0, dp1, k).
inline constexpr double kTriangleTolerance = 1e-9;

/// Throws pivex::Error(domain) if k <= 0 or the triangle is violated beyond
/// tolerance (corrupted distances or a non-metric input).
PlanePoint project_to_plane(double dp0, double dp1, double k);

/// max(0, |a*d - b*c| / k). Requires k > 0.
double ptolemaic_lower_bound(const QuadDistances& qd);

/// Planar distance between the projections of q and s. Never less than the
/// Ptolemaic bound (up to rounding).
double fourpoint_lower_bound(const QuadDistances& qd);

/// Writes "id,x,y" rows (header included, shortest round-trip decimals) for every
/// point of `ds` projected against pivots ds[i0], ds[i1].
void project_dataset(const Dataset& ds, std::size_t i0, std::size_t i1,
                     std::ostream& out);

/// Sampled boundary curves of the Ptolemaic S1 class and the two query
/// loci that allow its exclusion, in pivot-plane coordinates.
struct BoundaryCurve {
  std::string name;
  std::vector<PlanePoint> points;
};

/// Curves: "s1_boundary" (bisector above the tau*K arc, then the arc down
/// to the x axis), "q_hyperbola" (d(q,p1) - d(q,p0) = t/tau, p0 branch) and
/// "q_circle" (d(q,p0) = tau*K - t). Curves that do not exist for the given
/// parameters are omitted. `y_max` bounds the vertical extent.
std::vector<BoundaryCurve> ptolemaic_boundaries(double k, double tau, double t,
                                                double y_max,
                                                std::size_t samples = 200);

/// "curve,x,y" CSV of the curves above.
void write_boundaries_csv(const std::vector<BoundaryCurve>& curves,
                          std::ostream& out);

}  // namespace pivex
