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

#include "pivex/bounds.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "pivex/error.hpp"

namespace pivex {

namespace {

// Height of the triangle with sides (a, b, base) over `base`, using Kahan's
// cancellation-free form of Heron's formula.
double triangle_height(double a, double b, double base) {
  double s[3] = {a, b, base};
  std::sort(s, s + 3, std::greater<>());
  const double p = s[0], q = s[1], r = s[2];
  const double f1 = p + (q + r);
  const double f2 = r - (p - q);
  const double f3 = r + (p - q);
  const double f4 = p + (q - r);
  const double prod = f1 * std::max(0.0, f2) * f3 * f4;
  const double area = 0.25 * std::sqrt(std::max(0.0, prod));
  return 2.0 * area / base;
}

// Shortest text that parses back to the same double.
std::string fmt(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

PlanePoint project_to_plane(double dp0, double dp1, double k) {
  if (!(k > 0.0)) fail(ErrorCode::domain, "pivot distance must be positive");
  if (!(dp0 >= 0.0) || !(dp1 >= 0.0)) {
    fail(ErrorCode::domain, "distances must be nonnegative");
  }
  const double slack = kTriangleTolerance * std::max({dp0, dp1, k});
  if (dp0 > dp1 + k + slack || dp1 > dp0 + k + slack || k > dp0 + dp1 + slack) {
    fail(ErrorCode::domain, "distances (" + std::to_string(dp0) + ", " +
                                std::to_string(dp1) + ", " + std::to_string(k) +
                                ") violate the triangle inequality");
  }
  PlanePoint p;
  p.x = (dp0 * dp0 + k * k - dp1 * dp1) / (2.0 * k);
  p.y = triangle_height(dp0, dp1, k);
  return p;
}

double ptolemaic_lower_bound(const QuadDistances& qd) {
  if (!(qd.k > 0.0)) fail(ErrorCode::domain, "pivot distance must be positive");
  return std::max(0.0, std::abs(qd.a * qd.d - qd.b * qd.c) / qd.k);
}

double fourpoint_lower_bound(const QuadDistances& qd) {
  const PlanePoint q = project_to_plane(qd.a, qd.b, qd.k);
  const PlanePoint s = project_to_plane(qd.c, qd.d, qd.k);
  return std::hypot(q.x - s.x, q.y - s.y);
}

void project_dataset(const Dataset& ds, std::size_t i0, std::size_t i1,
                     std::ostream& out) {
  if (i0 >= ds.size() || i1 >= ds.size()) {
    fail(ErrorCode::invalid_argument, "pivot id out of range");
  }
  const double k = ds.distance(i0, i1);
  if (!(k > 0.0)) {
    fail(ErrorCode::degenerate_pivots, "pivots coincide (distance 0)");
  }
  out << "id,x,y\n";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const PlanePoint p = project_to_plane(ds.distance(i, i0), ds.distance(i, i1), k);
    out << i << ',' << fmt(p.x) << ',' << fmt(p.y) << '\n';
  }
}

std::vector<BoundaryCurve> ptolemaic_boundaries(double k, double tau, double t,
                                                double y_max,
                                                std::size_t samples) {
  if (!(k > 0.0)) fail(ErrorCode::domain, "pivot distance must be positive");
  if (!(tau >= 0.5)) fail(ErrorCode::invalid_argument, "tau must be >= 0.5");
  if (!(t >= 0.0)) fail(ErrorCode::invalid_argument, "threshold must be >= 0");
  samples = std::max<std::size_t>(samples, 2);
  std::vector<BoundaryCurve> curves;

  // S1: right of the bisector and outside radius tau*K around p0.
  {
    BoundaryCurve c{"s1_boundary", {}};
    const double radius = tau * k;
    const double corner_y = std::sqrt(std::max(0.0, radius * radius - 0.25 * k * k));
    if (y_max > corner_y) {
      c.points.push_back({0.5 * k, y_max});
    }
    const double theta0 = std::acos(std::min(1.0, 0.5 / tau));
    for (std::size_t i = 0; i < samples; ++i) {
      const double theta = theta0 * (1.0 - static_cast<double>(i) / (samples - 1));
      const PlanePoint p{radius * std::cos(theta), radius * std::sin(theta)};
      if (p.y <= y_max) c.points.push_back(p);
    }
    curves.push_back(std::move(c));
  }

  // Queries with d(q,p1) - d(q,p0) > t/tau lie left of this hyperbola branch.
  const double semi_major = 0.5 * t / tau;
  const double focal = 0.5 * k;
  if (semi_major < focal) {
    BoundaryCurve c{"q_hyperbola", {}};
    const double semi_minor = std::sqrt(focal * focal - semi_major * semi_major);
    const double u_max = std::asinh(y_max / semi_minor);
    for (std::size_t i = 0; i < samples; ++i) {
      const double u = u_max * static_cast<double>(i) / (samples - 1);
      c.points.push_back({focal - semi_major * std::cosh(u), semi_minor * std::sinh(u)});
    }
    curves.push_back(std::move(c));
  }

  // Queries with d(q,p0) < tau*K - t lie inside this circle.
  const double inner = tau * k - t;
  if (inner > 0.0) {
    BoundaryCurve c{"q_circle", {}};
    for (std::size_t i = 0; i < samples; ++i) {
      const double theta = std::numbers::pi * static_cast<double>(i) / (samples - 1);
      const PlanePoint p{inner * std::cos(theta), inner * std::sin(theta)};
      if (p.y <= y_max) c.points.push_back(p);
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

void write_boundaries_csv(const std::vector<BoundaryCurve>& curves,
                          std::ostream& out) {
  out << "curve,x,y\n";
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      out << c.name << ',' << fmt(p.x) << ',' << fmt(p.y) << '\n';
    }
  }
}

}  // namespace pivex
