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

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "pivex/bench.hpp"
#include "pivex/error.hpp"
#include "pivex/metric.hpp"
#include "pivex/random.hpp"

using namespace pivex;

namespace {

std::vector<MetricId> all_metrics() {
  std::vector<MetricId> out;
  for (const char* name : {"euclidean", "cosine", "js", "tri"}) {
    out.push_back(MetricId::parse(name));
    out.push_back(MetricId::parse(std::string("sqrt:") + name));
  }
  return out;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}

// Jensen-Shannon distance by direct summation, natural logs.
double js_oracle(const std::vector<double>& p, const std::vector<double>& q) {
  double kl_p = 0.0, kl_q = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0) kl_p += p[i] * std::log(p[i] / m);
    if (q[i] > 0) kl_q += q[i] * std::log(q[i] / m);
  }
  return std::sqrt(0.5 * (kl_p + kl_q) / std::log(2.0));
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
std::array<double, 4> eigenvalues(std::array<std::array<double, 4>, 4> a) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < 4; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 4; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  return {a[0][0], a[1][1], a[2][2], a[3][3]};
}

}  // namespace

TEST(Metric, EuclideanExamples) {
  const MetricId m;
  EXPECT_DOUBLE_EQ(distance(m, std::vector<double>{0, 0}, std::vector<double>{3, 4}), 5.0);
  const std::vector<double> x{0.25, 0.5, 0.125};
  EXPECT_EQ(distance(m, x, x), 0.0);
}

TEST(Metric, SqrtOfEuclidean) {
  const MetricId m = MetricId::parse("sqrt:euclidean");
  EXPECT_DOUBLE_EQ(distance(m, std::vector<double>{0, 0}, std::vector<double>{0, 4}), 2.0);
}

TEST(Metric, JensenShannonMatchesSummation) {
  const MetricId m = MetricId::parse("js");
  const std::vector<double> p{1, 0}, q{0, 1};
  EXPECT_EQ(distance(m, p, p), 0.0);
  EXPECT_NEAR(distance(m, p, q), js_oracle(p, q), 1e-12);
  EXPECT_NEAR(distance(m, p, q), 1.0, 1e-12);

  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const Dataset ds = generate_uniform(6, 2, derive_seed(7, i), m);
    const std::vector<double> a(ds.row(0).begin(), ds.row(0).end());
    const std::vector<double> b(ds.row(1).begin(), ds.row(1).end());
    EXPECT_NEAR(distance(m, a, b), js_oracle(a, b), 1e-12);
  }
}

TEST(Metric, TriangularAndCosine) {
  const std::vector<double> p{0.5, 0.5, 0}, q{0, 0.5, 0.5};
  // (0.25/0.5) + 0 + (0.25/0.5) = 1
  EXPECT_NEAR(distance(MetricId::parse("tri"), p, q), 1.0, 1e-15);
  // orthogonal unit vectors: chord sqrt(2)
  EXPECT_NEAR(distance(MetricId::parse("cosine"), std::vector<double>{2, 0},
                       std::vector<double>{0, 3}),
              std::sqrt(2.0), 1e-15);
}

TEST(Metric, ParseAndName) {
  EXPECT_EQ(MetricId::parse("l2").to_string(), "euclidean");
  EXPECT_EQ(MetricId::parse("sqrt:jensen_shannon").to_string(), "sqrt:js");
  EXPECT_EQ(code_of([] { MetricId::parse("sqrt:sqrt:euclidean"); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { MetricId::parse("manhattan"); }), ErrorCode::invalid_argument);
}

TEST(Metric, RejectsBadInput) {
  const MetricId e, js = MetricId::parse("js");
  EXPECT_EQ(code_of([&] { distance(e, std::vector<double>{1, 2}, std::vector<double>{1}); }),
            ErrorCode::dimension_mismatch);
  EXPECT_EQ(code_of([&] {
              distance(js, std::vector<double>{1.5, -0.5}, std::vector<double>{0.5, 0.5});
            }),
            ErrorCode::domain);
  EXPECT_EQ(code_of([&] {
              distance(js, std::vector<double>{0.5, 0.6}, std::vector<double>{0.5, 0.5});
            }),
            ErrorCode::domain);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(code_of([&] { distance(e, std::vector<double>{nan}, std::vector<double>{0}); }),
            ErrorCode::domain);
  EXPECT_EQ(code_of([] {
              distance(MetricId::parse("cosine"), std::vector<double>{0, 0},
                       std::vector<double>{1, 0});
            }),
            ErrorCode::domain);
}

TEST(MetricProperty, SymmetricAndTriangular) {
  for (const MetricId& m : all_metrics()) {
    const Dataset ds = generate_uniform(7, 3000, 11, m);
    for (std::size_t i = 0; i + 2 < ds.size(); i += 3) {
      const double ab = ds.distance(i, i + 1), ba = ds.distance(i + 1, i);
      ASSERT_EQ(ab, ba) << m.to_string();
      const double bc = ds.distance(i + 1, i + 2), ac = ds.distance(i, i + 2);
      ASSERT_LE(ac, ab + bc + 1e-12) << m.to_string();
      ASSERT_GE(ab, 0.0);
    }
  }
}

// Any four points of a supermetric space embed isometrically in R^3: the
// doubly centred Gram matrix of squared distances is positive semidefinite.
TEST(MetricProperty, FourPointEmbedding) {
  for (const char* name : {"euclidean", "sqrt:euclidean", "sqrt:js", "sqrt:cosine", "js", "tri"}) {
    const MetricId m = MetricId::parse(name);
    const Dataset ds = generate_uniform(5, 4000, 13, m);
    for (std::size_t base = 0; base + 3 < ds.size(); base += 4) {
      std::array<std::array<double, 4>, 4> d2{};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const double d = ds.distance(base + i, base + j);
          d2[i][j] = d * d;
        }
      std::array<std::array<double, 4>, 4> g{};
      double scale = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          double ri = 0, cj = 0, all = 0;
          for (int k = 0; k < 4; ++k) {
            ri += d2[i][k];
            cj += d2[k][j];
            for (int l = 0; l < 4; ++l) all += d2[k][l];
          }
          g[i][j] = -0.5 * (d2[i][j] - ri / 4 - cj / 4 + all / 16);
          scale = std::max(scale, std::abs(g[i][j]));
        }
      for (double ev : eigenvalues(g)) {
        ASSERT_GE(ev, -1e-9 * std::max(scale, 1.0)) << name << " at " << base;
      }
    }
  }
}
