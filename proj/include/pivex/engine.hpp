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
#include <memory>
#include <span>
#include <vector>

#include "pivex/dataset.hpp"
#include "pivex/partition.hpp"

namespace pivex {

struct QuerySpec {
  std::span<const double> q;
  double t = 0.0;
};

struct QueryOutcome {
  std::vector<std::size_t> results;  // ascending ids with d(q,s) <= t
  std::size_t distance_calls = 0;    // direct d(q,s) evaluations, pivots excluded
  std::size_t excluded_count = 0;    // points skipped through some partition
};

/// Exact range search over a dataset using a fixed list of partitions.
///
/// Query-to-pivot distances are computed once per distinct pivot and shared
/// by every partition. A point is skipped as soon as one partition, taken
/// in list order, places it in an excluded class; all others are checked
/// directly. Immutable after construction; range_query is safe to call
/// concurrently.
class ExclusionIndex {
 public:
  /// `refs` holds the pivots addressed by every partition's pair. All
  /// partitions must have been built over `data`.
  ExclusionIndex(std::shared_ptr<const Dataset> data,
                 std::shared_ptr<const Dataset> refs,
                 std::vector<Partition> partitions);

  QueryOutcome range_query(const QuerySpec& qs) const;

  const Dataset& data() const noexcept { return *data_; }
  const Dataset& refs() const noexcept { return *refs_; }
  std::span<const Partition> partitions() const noexcept { return partitions_; }

 private:
  std::shared_ptr<const Dataset> data_;
  std::shared_ptr<const Dataset> refs_;
  std::vector<Partition> partitions_;
  std::vector<std::size_t> pivots_;       // distinct refs rows in use
  std::vector<std::size_t> slot0_, slot1_;  // partition -> index into pivots_
  // membership_[s * P + k]: class bits of point s in partition k.
  std::vector<std::uint8_t> membership_;
};

/// One-shot variant that borrows its arguments.
QueryOutcome range_query(const Dataset& ds, const Dataset& refs,
                         std::span<const Partition> partitions,
                         const QuerySpec& qs);
QueryOutcome range_query(const Dataset& ds, std::span<const Partition> partitions,
                         const QuerySpec& qs);

/// Linear scan: every s with d(q,s) <= t, ascending.
std::vector<std::size_t> brute_force(const Dataset& ds, const QuerySpec& qs);

}  // namespace pivex
