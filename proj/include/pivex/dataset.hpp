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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pivex/metric.hpp"

namespace pivex {

/// Immutable row-major collection of points sharing one dimension and one
/// metric. Point ids are row indices. Every row is validated against the
/// metric on construction, so the hot-path distance can skip checks.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::size_t dim, std::vector<double> values, MetricId metric);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : values_.size() / dim_; }
  bool empty() const noexcept { return values_.empty(); }
  const MetricId& metric() const noexcept { return metric_; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * dim_, dim_};
  }
  std::span<const double> values() const noexcept { return values_; }

  /// Distance between two rows of this dataset.
  double distance(std::size_t i, std::size_t j) const noexcept {
    return distance_unchecked(metric_, row(i), row(j));
  }
  /// Distance from an external, already validated point to row i.
  double distance_to(std::span<const double> q, std::size_t i) const noexcept {
    return distance_unchecked(metric_, q, row(i));
  }

  /// Rows `ids`, in order, as a new dataset with the same metric.
  Dataset select(std::span<const std::size_t> ids) const;
  Dataset with_metric(MetricId metric) const;

  /// Throws unless `q` has this dataset's dimension and lies in the
  /// metric's domain.
  void check_query(std::span<const double> q) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> values_;
  MetricId metric_;
};

/// Binary layout: "MSPD", u32 dim, u64 count (little endian), then
/// count*dim little-endian f64 values in row-major order.
void save_dataset(const Dataset& ds, const std::string& path);
Dataset load_dataset(const std::string& path, MetricId metric);

}  // namespace pivex
