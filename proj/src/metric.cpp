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

#include "pivex/metric.hpp"

#include <cmath>
#include <string>

#include "pivex/error.hpp"

namespace pivex {

namespace {

constexpr double kMassTolerance = 1e-9;

MetricKind parse_base(std::string_view name) {
  if (name == "euclidean" || name == "l2") return MetricKind::euclidean;
  if (name == "cosine") return MetricKind::cosine;
  if (name == "js" || name == "jensen_shannon") return MetricKind::jensen_shannon;
  if (name == "tri" || name == "triangular") return MetricKind::triangular;
  if (name.starts_with("sqrt:")) {
    fail(ErrorCode::invalid_argument,
         "metric '" + std::string(name) + "': sqrt may only be applied once");
  }
  fail(ErrorCode::invalid_argument,
       "unknown metric '" + std::string(name) +
           "' (valid: euclidean, cosine, js, tri, sqrt:<inner>)");
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double norm(std::span<const double> a) {
  double acc = 0.0;
  for (double v : a) acc += v * v;
  return std::sqrt(acc);
}

double cosine_chord(std::span<const double> a, std::span<const double> b) {
  const double na = norm(a);
  const double nb = norm(b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] / na - b[i] / nb;
    acc += d * d;
  }
  return std::sqrt(acc);
}

// p * log2(p / m) with 0 log 0 = 0.
inline double kl_term(double p, double m) {
  return p > 0.0 ? p * std::log2(p / m) : 0.0;
}

double jensen_shannon(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double m = 0.5 * (a[i] + b[i]);
    if (m > 0.0) acc += kl_term(a[i], m) + kl_term(b[i], m);
  }
  const double div = 0.5 * acc;
  return std::sqrt(div > 0.0 ? div : 0.0);
}

double triangular(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double s = a[i] + b[i];
    if (s > 0.0) {
      const double d = a[i] - b[i];
      acc += d * d / s;
    }
  }
  return std::sqrt(acc);
}

}  // namespace

MetricId MetricId::parse(std::string_view name) {
  MetricId id;
  if (name.starts_with("sqrt:")) {
    id.sqrt = true;
    name.remove_prefix(5);
  }
  id.kind = parse_base(name);
  return id;
}

std::string MetricId::to_string() const {
  std::string base;
  switch (kind) {
    case MetricKind::euclidean: base = "euclidean"; break;
    case MetricKind::cosine: base = "cosine"; break;
    case MetricKind::jensen_shannon: base = "js"; break;
    case MetricKind::triangular: base = "tri"; break;
  }
  return sqrt ? "sqrt:" + base : base;
}

void validate_point(const MetricId& m, std::span<const double> x) {
  double mass = 0.0;
  for (double v : x) {
    if (!std::isfinite(v)) fail(ErrorCode::domain, "non-finite coordinate");
    if (m.requires_distribution() && v < 0.0) {
      fail(ErrorCode::domain,
           "negative coordinate under metric " + m.to_string());
    }
    mass += v;
  }
  if (m.requires_distribution() && std::abs(mass - 1.0) > kMassTolerance) {
    fail(ErrorCode::domain, "metric " + m.to_string() +
                                " expects L1-normalised input (sum = " +
                                std::to_string(mass) + ")");
  }
  if (m.kind == MetricKind::cosine && norm(x) == 0.0) {
    fail(ErrorCode::domain, "zero vector has no direction under cosine");
  }
}

double distance(const MetricId& m, std::span<const double> a,
                std::span<const double> b) {
  if (a.size() != b.size()) {
    fail(ErrorCode::dimension_mismatch,
         "dimension mismatch: " + std::to_string(a.size()) + " vs " +
             std::to_string(b.size()));
  }
  validate_point(m, a);
  validate_point(m, b);
  return distance_unchecked(m, a, b);
}

double distance_unchecked(const MetricId& m, std::span<const double> a,
                          std::span<const double> b) noexcept {
  double d = 0.0;
  switch (m.kind) {
    case MetricKind::euclidean: d = euclidean(a, b); break;
    case MetricKind::cosine: d = cosine_chord(a, b); break;
    case MetricKind::jensen_shannon: d = jensen_shannon(a, b); break;
    case MetricKind::triangular: d = triangular(a, b); break;
  }
  return m.sqrt ? std::sqrt(d) : d;
}

}  // namespace pivex
