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
#include <vector>

#include "pivex/bench.hpp"
#include "pivex/error.hpp"
#include "pivex/partition.hpp"
#include "pivex/random.hpp"

using namespace pivex;
using enum ClassTag;

namespace {

Dataset line_dataset() { return Dataset(1, {0, 1, 2, 3, 4, 5}, MetricId{}); }

std::vector<ClassTag> labels_for(const Mechanism& mech) {
  const Dataset ds = line_dataset();
  return build_partition(ds, PivotPair::make(ds, 0, 5), mech).labels;
}

// Random triples of real points: (dp0, dp1, K) as a metric would produce.
struct Triple {
  double dp0, dp1, k;
};

std::vector<Triple> sample_triples(std::size_t dim, std::size_t n, std::uint64_t seed) {
  const Dataset ds = generate_uniform(dim, 3 * n, seed);
  std::vector<Triple> out;
  for (std::size_t i = 0; i < ds.size(); i += 3) {
    out.push_back({ds.distance(i + 2, i), ds.distance(i + 2, i + 1), ds.distance(i, i + 1)});
  }
  return out;
}

}  // namespace

TEST(Classify, PtolemaicRegions) {
  const Mechanism m = Mechanism::ptolemaic(1.0);
  EXPECT_EQ(classify_point(2.5, 1.0, 2, m), ClassSet{s1});
  EXPECT_EQ(classify_point(1.0, 2.5, 2, m), ClassSet{s2});
  EXPECT_EQ(classify_point(0.5, 1.9, 2, m), ClassSet{s3});
}

TEST(Classify, HalfTauNeverMiddle) {
  for (std::size_t dim : {1, 2, 5, 20}) {
    for (const Triple& tr : sample_triples(dim, 2000, dim)) {
      ASSERT_FALSE(classify_point(tr.dp0, tr.dp1, tr.k, Mechanism::ptolemaic(0.5)).contains(s3));
    }
  }
}

TEST(Classify, TiesAndBalls) {
  EXPECT_EQ(classify_point(1, 1, 1, Mechanism::hyperplane()), ClassSet{left});
  EXPECT_EQ(classify_point(1, 1, 1, Mechanism::hilbert()), ClassSet{left});
  EXPECT_EQ(classify_point(2, 0, 1, Mechanism::ball_in(2)), ClassSet{inside});
  EXPECT_EQ(classify_point(2, 0, 1, Mechanism::ball_out(2)), ClassSet{outside});
  EXPECT_EQ(classify_point(2.5, 1.0, 2, Mechanism::combined(1.0)), (ClassSet{right, s1}));
}

TEST(Exclude, PtolemaicExamples) {
  const Mechanism m = Mechanism::ptolemaic(1.0);
  // Both S1 disjuncts fire; B = 2.2 >= tau*K + t also rules out the middle.
  const ClassSet ex = excluded_classes(m, 2, {0.5, 2.2, 0.1});
  EXPECT_TRUE(ex.contains(s1));
  EXPECT_EQ(ex, (ClassSet{s1, s3}));
  // 2.4 - 2.3 rounds above 0.1, so the strict S1 test fires as well.
  EXPECT_TRUE(excluded_classes(m, 2, {2.3, 2.4, 0.1}).contains(s3));
  EXPECT_EQ(excluded_classes(m, 2, {2.25, 2.375, 0.125}), ClassSet{s3});
  EXPECT_EQ(excluded_classes(m, 2, {2.0, 2.0, 0.1}), ClassSet{});
}

TEST(Exclude, HilbertAndHyperplane) {
  EXPECT_EQ(excluded_classes(Mechanism::hilbert(), 4, {5, 3, 0.9}), ClassSet{left});
  EXPECT_EQ(excluded_classes(Mechanism::hilbert(), 4, {3, 5, 0.9}), ClassSet{right});
  // Query nearer p1 by more than 2t: nothing on the p0 side can be within t.
  EXPECT_EQ(excluded_classes(Mechanism::hyperplane(), 4, {5, 3, 0.9}), ClassSet{left});
  EXPECT_EQ(excluded_classes(Mechanism::hyperplane(), 4, {5, 3, 1.0}), ClassSet{});
  // Equidistant query: no difference-based exclusion.
  EXPECT_EQ(excluded_classes(Mechanism::hilbert(), 4, {3, 3, 0}), ClassSet{});
}

TEST(Exclude, Balls) {
  const Mechanism m = Mechanism::ball_in(1.0);
  EXPECT_EQ(excluded_classes(m, 1, {1.5, 0, 0.4}), ClassSet{inside});
  EXPECT_EQ(excluded_classes(m, 1, {0.5, 0, 0.4}), ClassSet{outside});
  EXPECT_EQ(excluded_classes(m, 1, {1.2, 0, 0.4}), ClassSet{});
}

TEST(Build, LineDataset) {
  EXPECT_EQ(labels_for(Mechanism::ptolemaic(1.0)),
            (std::vector<ClassTag>{s2, s3, s3, s3, s3, s1}));
  EXPECT_EQ(labels_for(Mechanism::hyperplane()),
            (std::vector<ClassTag>{left, left, left, right, right, right}));
}

TEST(Build, EmptyAndErrors) {
  const Dataset refs = line_dataset();
  const Dataset empty(1, {}, MetricId{});
  const Partition pe = build_partition(empty, refs, PivotPair::make(refs, 0, 5),
                                       Mechanism::ptolemaic(1.0));
  EXPECT_EQ(pe.size(), 0u);

  const Dataset dup(1, {2, 2, 3}, MetricId{});
  EXPECT_THROW(PivotPair::make(dup, 0, 1), Error);
  EXPECT_THROW(PivotPair::make(dup, 2, 2), Error);
  EXPECT_THROW(PivotPair::make(dup, 0, 3), Error);
  EXPECT_THROW(Mechanism::ptolemaic(0.4).validate(), Error);
  EXPECT_THROW(parse_mechanism_kind("voronoi"), Error);
  try {
    parse_mechanism_kind("voronoi");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("hilbert"), std::string::npos);
  }
}

TEST(Build, TotalityOnRandomData) {
  const Dataset ds = generate_uniform(6, 1000, 21);
  const PivotPair pair = PivotPair::make(ds, 3, 7);
  for (const Mechanism& m : {Mechanism::ball_in(0.8), Mechanism::hyperplane(),
                             Mechanism::ptolemaic(1.1), Mechanism::combined(1.1)}) {
    const Partition pe = build_partition(ds, pair, m);
    ASSERT_EQ(pe.size(), ds.size());
    for (std::size_t s = 0; s < ds.size(); ++s) {
      EXPECT_EQ(pe.membership(s), classify_point(ds.distance(s, 3), ds.distance(s, 7), pair.k, m));
    }
  }
}

// Exclusion safety and the per-query dominance relations, on random points.
TEST(Property, SafetyAndDominance) {
  Rng rng(99);
  for (const char* name : {"euclidean", "sqrt:euclidean"}) {
    const MetricId metric = MetricId::parse(name);
    for (int round = 0; round < 200; ++round) {
      const std::size_t dim = std::vector<std::size_t>{2, 5, 10, 20}[round % 4];
      const Dataset ds = generate_uniform(dim, 150, derive_seed(99, round), metric);
      const Dataset refs = generate_uniform(dim, 2, derive_seed(98, round), metric);
      const Dataset q = generate_uniform(dim, 1, derive_seed(97, round), metric);
      const double t = calibrate_threshold(ds, q.row(0), 1 + rng.below(10)) * rng.uniform(0.3, 1.5);
      const double tau = rng.uniform(0.5, 2.0);
      const PivotPair pair = PivotPair::make(refs, 0, 1);
      const QueryEval qe{q.distance_to(refs.row(0), 0), q.distance_to(refs.row(1), 0), t};

      const ClassSet hyp = excluded_classes(Mechanism::hyperplane(), pair.k, qe);
      const ClassSet hil = excluded_classes(Mechanism::hilbert(), pair.k, qe);
      const ClassSet pto = excluded_classes(Mechanism::ptolemaic(tau), pair.k, qe);
      const ClassSet com = excluded_classes(Mechanism::combined(tau), pair.k, qe);
      ASSERT_TRUE(hil.includes(hyp));
      ASSERT_TRUE(com.includes(hil));
      ASSERT_TRUE(com.includes(pto));

      const double median = median_pivot_distance(ds, refs, 0);
      for (const Mechanism& m : {Mechanism::ball_in(median), Mechanism::ball_out(median),
                                 Mechanism::hyperplane(), Mechanism::hilbert(),
                                 Mechanism::ptolemaic(tau), Mechanism::combined(tau)}) {
        const Partition pe = build_partition(ds, refs, pair, m);
        const ClassSet ex = excluded_classes(pe, qe);
        for (std::size_t s = 0; s < ds.size(); ++s) {
          if (pe.membership(s).intersects(ex)) {
            ASSERT_GT(ds.distance_to(q.row(0), s), t) << name << ' ' << mechanism_name(m.kind);
          }
        }
      }
    }
  }
}

TEST(Property, HalfTauMatchesHyperplane) {
  const Dataset ds = generate_uniform(10, 500, 5);
  const Dataset refs = generate_uniform(10, 2, 6);
  const Dataset qs = generate_uniform(10, 100, 7);
  const PivotPair pair = PivotPair::make(refs, 0, 1);
  const Partition ph = build_partition(ds, refs, pair, Mechanism::hyperplane());
  const Partition pp = build_partition(ds, refs, pair, Mechanism::ptolemaic(0.5));
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const QueryEval qe{qs.distance_to(refs.row(0), i), qs.distance_to(refs.row(1), i),
                       calibrate_threshold(ds, qs.row(i), 5)};
    const ClassSet eh = excluded_classes(ph, qe), ep = excluded_classes(pp, qe);
    for (std::size_t s = 0; s < ds.size(); ++s) {
      ASSERT_EQ(ph.membership(s).intersects(eh), pp.membership(s).intersects(ep));
    }
  }
}

// Planar configurations: s in S1 and B - A > t/tau force d(q,s) > t.
TEST(Property, HyperbolaLocus) {
  Rng rng(5);
  const double k = 1.0;
  int checked = 0;
  for (int i = 0; i < 200000; ++i) {
    const double tau = rng.uniform(0.5, 2.0), t = rng.uniform(0.0, 0.5);
    const double sx = rng.uniform(-3, 3), sy = rng.uniform(-3, 3);
    const double qx = rng.uniform(-3, 3), qy = rng.uniform(-3, 3);
    const double dp0 = std::hypot(sx, sy), dp1 = std::hypot(sx - k, sy);
    const double a = std::hypot(qx, qy), b = std::hypot(qx - k, qy);
    if (!(dp0 >= dp1 && dp0 >= tau * k) || !(b - a > t / tau)) continue;
    ++checked;
    ASSERT_GT(std::hypot(qx - sx, qy - sy), t);
  }
  EXPECT_GT(checked, 1000);
}
