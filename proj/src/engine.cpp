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

#include "pivex/engine.hpp"

#include <algorithm>

#include "pivex/error.hpp"

namespace pivex {

namespace {

void check_threshold(double t) {
  if (!(t >= 0.0)) fail(ErrorCode::invalid_argument, "query threshold must be >= 0");
}

std::shared_ptr<const Dataset> borrow(const Dataset& ds) {
  return {std::shared_ptr<const Dataset>{}, &ds};
}

}  // namespace

ExclusionIndex::ExclusionIndex(std::shared_ptr<const Dataset> data,
                               std::shared_ptr<const Dataset> refs,
                               std::vector<Partition> partitions)
    : data_(std::move(data)), refs_(std::move(refs)), partitions_(std::move(partitions)) {
  if (!data_ || !refs_) fail(ErrorCode::invalid_argument, "null dataset");
  if (!partitions_.empty() &&
      (refs_->dim() != data_->dim() || !(refs_->metric() == data_->metric()))) {
    fail(ErrorCode::dimension_mismatch,
         "reference points must share the dataset's dimension and metric");
  }
  const std::size_t n = data_->size();
  const std::size_t np = partitions_.size();

  auto slot_of = [this](std::size_t pivot) {
    if (pivot >= refs_->size()) fail(ErrorCode::invalid_argument, "pivot id out of range");
    auto it = std::find(pivots_.begin(), pivots_.end(), pivot);
    if (it != pivots_.end()) return static_cast<std::size_t>(it - pivots_.begin());
    pivots_.push_back(pivot);
    return pivots_.size() - 1;
  };
  for (const auto& pe : partitions_) {
    if (pe.size() != n) {
      fail(ErrorCode::dimension_mismatch, "partition was built over a different dataset");
    }
    slot0_.push_back(slot_of(pe.pair.i0));
    slot1_.push_back(slot_of(pe.pair.i1));
  }

  membership_.resize(n * np);
  for (std::size_t k = 0; k < np; ++k) {
    for (std::size_t s = 0; s < n; ++s) {
      membership_[s * np + k] = partitions_[k].membership(s).bits();
    }
  }
}

QueryOutcome ExclusionIndex::range_query(const QuerySpec& qs) const {
  data_->check_query(qs.q);
  check_threshold(qs.t);

  std::vector<double> pivot_dist(pivots_.size());
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    pivot_dist[i] = distance_unchecked(data_->metric(), qs.q, refs_->row(pivots_[i]));
  }

  // Only partitions that exclude something this query take part.
  const std::size_t np = partitions_.size();
  std::vector<std::size_t> active;
  std::vector<std::uint8_t> masks;
  for (std::size_t k = 0; k < np; ++k) {
    const QueryEval qe{pivot_dist[slot0_[k]], pivot_dist[slot1_[k]], qs.t};
    const ClassSet ex = excluded_classes(partitions_[k], qe);
    if (!ex.empty()) {
      active.push_back(k);
      masks.push_back(ex.bits());
    }
  }

  QueryOutcome out;
  const std::size_t n = data_->size();
  for (std::size_t s = 0; s < n; ++s) {
    const std::uint8_t* row = membership_.data() + s * np;
    bool skipped = false;
    for (std::size_t j = 0; j < active.size(); ++j) {
      if (row[active[j]] & masks[j]) {
        skipped = true;
        break;
      }
    }
    if (skipped) {
      ++out.excluded_count;
      continue;
    }
    ++out.distance_calls;
    if (data_->distance_to(qs.q, s) <= qs.t) out.results.push_back(s);
  }
  return out;
}

QueryOutcome range_query(const Dataset& ds, const Dataset& refs,
                         std::span<const Partition> partitions,
                         const QuerySpec& qs) {
  ExclusionIndex index(borrow(ds), borrow(refs),
                       std::vector<Partition>(partitions.begin(), partitions.end()));
  return index.range_query(qs);
}

QueryOutcome range_query(const Dataset& ds, std::span<const Partition> partitions,
                         const QuerySpec& qs) {
  return range_query(ds, ds, partitions, qs);
}

std::vector<std::size_t> brute_force(const Dataset& ds, const QuerySpec& qs) {
  ds.check_query(qs.q);
  check_threshold(qs.t);
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < ds.size(); ++s) {
    if (ds.distance_to(qs.q, s) <= qs.t) out.push_back(s);
  }
  return out;
}

}  // namespace pivex
