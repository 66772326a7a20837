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

#include <memory>
#include <vector>

#include "pivex/bench.hpp"
#include "pivex/engine.hpp"
#include "pivex/error.hpp"
#include "pivex/random.hpp"

using namespace pivex;

namespace {

std::vector<Partition> partitions_for(const Dataset& ds, const Dataset& refs,
                                      const Mechanism& mech) {
  std::vector<Partition> out;
  for (const PivotPair& p : all_pairs(refs, refs.size())) {
    out.push_back(build_partition(ds, refs, p, mech));
  }
  return out;
}

std::vector<std::size_t> linear_scan(const Dataset& ds, std::span<const double> q, double t) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < ds.size(); ++s) {
    if (ds.distance_to(q, s) <= t) out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(RangeQuery, LineExample) {
  const Dataset ds(1, {0, 1, 2, 3, 4, 5}, MetricId{});
  const std::vector<Partition> parts{
      build_partition(ds, PivotPair::make(ds, 0, 5), Mechanism::ptolemaic(1.0))};
  const std::vector<double> q{-1};
  const QueryOutcome out = range_query(ds, parts, {q, 0.5});
  EXPECT_TRUE(out.results.empty());
  EXPECT_EQ(out.distance_calls, 1u);
  EXPECT_EQ(out.excluded_count, 5u);
}

TEST(RangeQuery, LargeThresholdKeepsEverything) {
  const Dataset ds = generate_uniform(4, 300, 1);
  const Dataset refs = generate_uniform(4, 5, 2);
  const Dataset q = generate_uniform(4, 1, 3);
  const QueryOutcome out =
      range_query(ds, refs, partitions_for(ds, refs, Mechanism::combined(1.0)), {q.row(0), 100.0});
  EXPECT_EQ(out.results.size(), ds.size());
  EXPECT_EQ(out.excluded_count, 0u);
  EXPECT_EQ(out.distance_calls, ds.size());
}

TEST(RangeQuery, ZeroThresholdFindsDuplicates) {
  const Dataset ds(2, {0.1, 0.2, 0.7, 0.7, 0.1, 0.2, 0.9, 0.3}, MetricId{});
  const Dataset refs(2, {0, 0, 1, 1, 1, 0}, MetricId{});
  const std::vector<double> q{0.1, 0.2};
  for (const Mechanism& m : {Mechanism::hyperplane(), Mechanism::combined(1.3)}) {
    const QueryOutcome out = range_query(ds, refs, partitions_for(ds, refs, m), {q, 0.0});
    EXPECT_EQ(out.results, (std::vector<std::size_t>{0, 2}));
  }
}

TEST(BruteForce, Trivial) {
  const std::vector<double> q{0.5, 0.5};
  EXPECT_TRUE(brute_force(Dataset(2, {}, MetricId{}), {q, 1.0}).empty());
  EXPECT_TRUE(brute_force(generate_uniform(2, 100, 4), {q, 0.0}).empty());
  EXPECT_THROW(brute_force(generate_uniform(3, 10, 4), {q, 1.0}), Error);
  EXPECT_THROW(brute_force(generate_uniform(2, 10, 4), {q, -1.0}), Error);
}

TEST(RangeQuery, MatchesLinearScan) {
  Rng rng(31);
  for (int round = 0; round < 300; ++round) {
    const std::size_t dim = 2 + rng.below(12);
    const MetricId metric = MetricId::parse(round % 3 == 0 ? "sqrt:euclidean" : "euclidean");
    const Dataset ds = generate_uniform(dim, 50 + rng.below(300), derive_seed(31, round), metric);
    const Dataset refs = generate_uniform(dim, 2 + rng.below(4), derive_seed(32, round), metric);
    const Dataset q = generate_uniform(dim, 1, derive_seed(33, round), metric);
    const double t = calibrate_threshold(ds, q.row(0), 1 + rng.below(10)) * rng.uniform(0.5, 1.2);
    const auto expected = linear_scan(ds, q.row(0), t);
    const double tau = rng.uniform(0.5, 1.5);
    const double m = median_pivot_distance(ds, refs, 0);
    for (const Mechanism& mech : {Mechanism::ball_in(m), Mechanism::ball_out(m),
                                  Mechanism::hyperplane(), Mechanism::hilbert(),
                                  Mechanism::ptolemaic(tau), Mechanism::combined(tau)}) {
      const QueryOutcome out =
          range_query(ds, refs, partitions_for(ds, refs, mech), {q.row(0), t});
      ASSERT_EQ(out.results, expected) << mechanism_name(mech.kind) << " round " << round;
      ASSERT_EQ(out.excluded_count + out.distance_calls, ds.size());
    }
  }
}

TEST(RangeQuery, MonotoneInPartitionsAndOrderedByMechanism) {
  const Dataset ds = generate_uniform(10, 2000, 41);
  const Dataset refs = generate_uniform(10, 6, 42);
  const Dataset qs = generate_uniform(10, 30, 43);
  const auto hil = partitions_for(ds, refs, Mechanism::hilbert());
  const auto pto = partitions_for(ds, refs, Mechanism::ptolemaic(1.0));
  const auto com = partitions_for(ds, refs, Mechanism::combined(1.0));
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const QuerySpec spec{qs.row(i), calibrate_threshold(ds, qs.row(i), 5)};
    std::size_t last = 0;
    for (std::size_t n = 1; n <= com.size(); ++n) {
      const auto excluded =
          range_query(ds, refs, std::span(com).first(n), spec).excluded_count;
      ASSERT_GE(excluded, last);
      last = excluded;
    }
    const auto c = range_query(ds, refs, com, spec).excluded_count;
    ASSERT_GE(c, range_query(ds, refs, hil, spec).excluded_count);
    ASSERT_GE(c, range_query(ds, refs, pto, spec).excluded_count);
  }
}

TEST(ExclusionIndex, SharedOwnershipAndRepeatability) {
  auto ds = std::make_shared<const Dataset>(generate_uniform(5, 400, 51));
  auto refs = std::make_shared<const Dataset>(generate_uniform(5, 4, 52));
  const ExclusionIndex index(ds, refs, partitions_for(*ds, *refs, Mechanism::combined(1.1)));
  EXPECT_EQ(index.partitions().size(), 6u);
  const Dataset q = generate_uniform(5, 1, 53);
  const QuerySpec spec{q.row(0), 0.3};
  const QueryOutcome a = index.range_query(spec), b = index.range_query(spec);
  EXPECT_EQ(a.results, b.results);
  EXPECT_EQ(a.excluded_count, b.excluded_count);

  const std::vector<double> wrong_dim{0.1, 0.2};
  EXPECT_THROW(index.range_query({wrong_dim, 0.3}), Error);
  const Dataset other = generate_uniform(5, 10, 54);
  EXPECT_THROW(ExclusionIndex(std::make_shared<const Dataset>(other), refs,
                              partitions_for(*ds, *refs, Mechanism::hyperplane())),
               Error);
}
