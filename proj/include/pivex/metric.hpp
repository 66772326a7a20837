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

#include <span>
#include <string>
#include <string_view>

namespace pivex {

enum class MetricKind {
  euclidean,
  // Chord distance between unit-normalised vectors, sqrt(2 - 2 cos).
  cosine,
  // sqrt of the base-2 Jensen-Shannon divergence; inputs are probability
  // vectors (nonnegative, summing to 1).
  jensen_shannon,
  // sqrt of the triangular discrimination sum (p-q)^2/(p+q); same domain as
  // jensen_shannon.
  triangular,
};

/// A metric identifier: a base kind optionally wrapped once in a square
/// root. Canonical string forms are "euclidean", "cosine", "js", "tri" and
/// "sqrt:<inner>".
struct MetricId {
  MetricKind kind = MetricKind::euclidean;
  bool sqrt = false;

  static MetricId parse(std::string_view name);
  std::string to_string() const;

  /// True for metrics whose inputs must be probability vectors.
  bool requires_distribution() const noexcept {
    return kind == MetricKind::jensen_shannon ||
           kind == MetricKind::triangular;
  }

  friend bool operator==(const MetricId&, const MetricId&) = default;
};

/// Checks that a vector lies in the domain of `m`: finite coordinates,
/// and for divergence metrics nonnegative mass summing to 1 within 1e-9.
/// Cosine rejects the zero vector. Throws pivex::Error(domain).
void validate_point(const MetricId& m, std::span<const double> x);

/// Distance with full argument checking.
double distance(const MetricId& m, std::span<const double> a,
                std::span<const double> b);

/// Hot-path distance: dimensions must already match and both points must
/// have passed validate_point.
double distance_unchecked(const MetricId& m, std::span<const double> a,
                          std::span<const double> b) noexcept;

}  // namespace pivex
