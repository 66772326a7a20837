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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "pivex/bench.hpp"
#include "pivex/bounds.hpp"
#include "pivex/error.hpp"
#include "pivex/random.hpp"

using namespace pivex;

namespace {

double planar(PlanePoint p, double x, double y) { return std::hypot(p.x - x, p.y - y); }

}  // namespace

TEST(Plane, ThreeFourFive) {
  const PlanePoint p = project_to_plane(3, 4, 5);
  EXPECT_NEAR(p.x, 1.8, 1e-12);
  EXPECT_NEAR(p.y, 2.4, 1e-12);
  EXPECT_NEAR(planar(p, 0, 0), 3.0, 1e-12);
  EXPECT_NEAR(planar(p, 5, 0), 4.0, 1e-12);
}

TEST(Plane, PointsOnPivots) {
  const double k = 1.7;
  PlanePoint p = project_to_plane(0, k, k);
  EXPECT_EQ(p.x, 0.0);
  EXPECT_EQ(p.y, 0.0);
  p = project_to_plane(k, 0, k);
  EXPECT_DOUBLE_EQ(p.x, k);
  EXPECT_EQ(p.y, 0.0);
}

TEST(Plane, Errors) {
  EXPECT_THROW(project_to_plane(1, 1, 3), Error);  // 1 + 1 < 3
  EXPECT_THROW(project_to_plane(1, 1, 0), Error);
  EXPECT_THROW(project_to_plane(-1, 1, 1), Error);
  // Within the relative tolerance the triangle is flattened, not rejected.
  const PlanePoint p = project_to_plane(1, 2 + 1e-12, 1);
  EXPECT_EQ(p.y, 0.0);
}

TEST(Plane, FidelityOnRealTriangles) {
  const Dataset ds = generate_uniform(10, 3000, 5);
  for (std::size_t i = 0; i + 2 < ds.size(); i += 3) {
    const double k = ds.distance(i, i + 1);
    const double d0 = ds.distance(i + 2, i), d1 = ds.distance(i + 2, i + 1);
    const PlanePoint p = project_to_plane(d0, d1, k);
    ASSERT_GE(p.y, 0.0);
    ASSERT_NEAR(planar(p, 0, 0), d0, 1e-9);
    ASSERT_NEAR(planar(p, k, 0), d1, 1e-9);
  }
}

TEST(Bounds, CollinearExample) {
  // p0=0, p1=5, q=-1, s=6 on a line: true distance 7.
  const QuadDistances qd{1, 6, 6, 1, 5};
  EXPECT_NEAR(ptolemaic_lower_bound(qd), 7.0, 1e-12);
  EXPECT_NEAR(fourpoint_lower_bound(qd), 7.0, 1e-12);
}

TEST(Bounds, SameProjectionGivesZero) {
  const QuadDistances qd{2, 3, 2, 3, 4};
  EXPECT_EQ(ptolemaic_lower_bound(qd), 0.0);
  EXPECT_NEAR(fourpoint_lower_bound(qd), 0.0, 1e-12);
}

TEST(Bounds, DominanceOnRandomQuadruples) {
  for (const char* name : {"euclidean", "sqrt:euclidean", "sqrt:js"}) {
    const MetricId m = MetricId::parse(name);
    const Dataset ds = generate_uniform(10, 4000, 17, m);
    for (std::size_t i = 0; i + 3 < ds.size(); i += 4) {
      const QuadDistances qd{ds.distance(i, i + 2), ds.distance(i, i + 3),
                             ds.distance(i + 1, i + 2), ds.distance(i + 1, i + 3),
                             ds.distance(i + 2, i + 3)};
      const double truth = ds.distance(i, i + 1);
      const double ptol = ptolemaic_lower_bound(qd), four = fourpoint_lower_bound(qd);
      ASSERT_GE(ptol, 0.0);
      ASSERT_LE(ptol, four + 1e-12) << name;
      ASSERT_LE(four, truth + 1e-12) << name;
    }
  }
}

TEST(ProjectDataset, CsvPreservesPivotDistances) {
  const Dataset ds = generate_uniform(10, 500, 3);
  std::ostringstream out;
  project_dataset(ds, 4, 9, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "id,x,y");
  const double k = ds.distance(4, 9);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::size_t id;
    double x, y;
    char c1, c2;
    std::istringstream ls(line);
    ls >> id >> c1 >> x >> c2 >> y;
    ASSERT_EQ(id, rows);
    ASSERT_NEAR(std::hypot(x, y), ds.distance(id, 4), 1e-9);
    ASSERT_NEAR(std::hypot(x - k, y), ds.distance(id, 9), 1e-9);
    ++rows;
  }
  EXPECT_EQ(rows, ds.size());
}

TEST(ProjectDataset, Errors) {
  const Dataset dup(2, {0, 0, 0, 0, 1, 1}, MetricId{});
  std::ostringstream out;
  try {
    project_dataset(dup, 0, 1, out);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_pivots);
  }
  EXPECT_THROW(project_dataset(dup, 0, 3, out), Error);
}

TEST(Boundaries, CurvesLieOnTheirLoci) {
  const double k = 1.2, tau = 1.3, t = 0.3;
  const auto curves = ptolemaic_boundaries(k, tau, t, 2.0);
  ASSERT_EQ(curves.size(), 3u);
  for (const PlanePoint& p : curves[0].points) {
    const bool on_bisector = std::abs(p.x - 0.5 * k) < 1e-12;
    const bool on_arc = std::abs(planar(p, 0, 0) - tau * k) < 1e-9;
    EXPECT_TRUE(on_bisector || on_arc);
  }
  for (const PlanePoint& p : curves[1].points) {
    EXPECT_NEAR(planar(p, k, 0) - planar(p, 0, 0), t / tau, 1e-9);
  }
  for (const PlanePoint& p : curves[2].points) {
    EXPECT_NEAR(planar(p, 0, 0), tau * k - t, 1e-9);
  }
  std::ostringstream out;
  write_boundaries_csv(curves, out);
  EXPECT_EQ(out.str().rfind("curve,x,y\ns1_boundary,", 0), 0u);
}
