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

#include "pivex/partition.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "pivex/error.hpp"

namespace pivex {

namespace {

constexpr std::array<std::pair<MechanismKind, std::string_view>, 6> kMechanismNames = {{
    {MechanismKind::ball_in, "ball_in"},
    {MechanismKind::ball_out, "ball_out"},
    {MechanismKind::hyperplane, "hyperplane"},
    {MechanismKind::hilbert, "hilbert"},
    {MechanismKind::ptolemaic, "ptolemaic"},
    {MechanismKind::combined, "combined"},
}};

ClassTag classify_ptolemaic(double dp0, double dp1, double radius) {
  if (dp0 >= dp1 && dp0 >= radius) return ClassTag::s1;
  if (dp0 < dp1 && dp1 >= radius) return ClassTag::s2;
  return ClassTag::s3;
}

ClassTag classify_side(double dp0, double dp1) {
  return dp0 <= dp1 ? ClassTag::left : ClassTag::right;
}

ClassSet exclude_ptolemaic(double k, double tau, const QueryEval& q) {
  const double margin = q.t / tau;
  const double radius = tau * k;
  ClassSet out;
  if (q.b - q.a > margin || q.a < radius - q.t) out.insert(ClassTag::s1);
  if (q.a - q.b >= margin || q.b < radius - q.t) out.insert(ClassTag::s2);
  if (q.a >= radius + q.t || q.b >= radius + q.t) out.insert(ClassTag::s3);
  return out;
}

ClassSet exclude_hilbert(double k, const QueryEval& q) {
  const double skew = (q.a * q.a - q.b * q.b) / k;
  ClassSet out;
  if (skew > 2.0 * q.t) out.insert(ClassTag::left);
  if (-skew > 2.0 * q.t) out.insert(ClassTag::right);
  return out;
}

}  // namespace

void Mechanism::validate() const {
  if (uses_tau() && !(param >= 0.5)) {
    fail(ErrorCode::invalid_argument,
         "tau must be >= 0.5 (got " + std::to_string(param) + ")");
  }
  if (is_ball() && !(param >= 0.0)) {
    fail(ErrorCode::invalid_argument, "ball radius must be >= 0");
  }
}

std::string_view mechanism_name(MechanismKind kind) noexcept {
  for (const auto& [k, name] : kMechanismNames) {
    if (k == kind) return name;
  }
  return "?";
}

MechanismKind parse_mechanism_kind(std::string_view name) {
  for (const auto& [k, n] : kMechanismNames) {
    if (n == name) return k;
  }
  std::string valid;
  for (const auto& [k, n] : kMechanismNames) {
    if (!valid.empty()) valid += ", ";
    valid += n;
  }
  fail(ErrorCode::invalid_argument,
       "unknown mechanism '" + std::string(name) + "' (valid: " + valid + ")");
}

std::string_view class_name(ClassTag tag) noexcept {
  switch (tag) {
    case ClassTag::left: return "left";
    case ClassTag::right: return "right";
    case ClassTag::inside: return "inside";
    case ClassTag::outside: return "outside";
    case ClassTag::s1: return "S1";
    case ClassTag::s2: return "S2";
    case ClassTag::s3: return "S3";
  }
  return "?";
}

std::string to_string(ClassSet set) {
  std::string out = "{";
  for (unsigned t = 0; t <= static_cast<unsigned>(ClassTag::s3); ++t) {
    const auto tag = static_cast<ClassTag>(t);
    if (!set.contains(tag)) continue;
    if (out.size() > 1) out += ',';
    out += class_name(tag);
  }
  return out + "}";
}

PivotPair PivotPair::make(const Dataset& refs, std::size_t i0, std::size_t i1) {
  if (i0 >= refs.size() || i1 >= refs.size()) {
    fail(ErrorCode::invalid_argument, "pivot id out of range");
  }
  if (i0 == i1) fail(ErrorCode::degenerate_pivots, "pivot ids must differ");
  const double k = refs.distance(i0, i1);
  if (!(k > 0.0)) {
    fail(ErrorCode::degenerate_pivots, "pivots " + std::to_string(i0) + " and " +
                                           std::to_string(i1) + " coincide");
  }
  return {i0, i1, k};
}

ClassSet classify_point(double dp0, double dp1, double k, const Mechanism& mech) {
  switch (mech.kind) {
    case MechanismKind::ball_in:
      return {dp0 <= mech.param ? ClassTag::inside : ClassTag::outside};
    case MechanismKind::ball_out:
      return {dp0 >= mech.param ? ClassTag::outside : ClassTag::inside};
    case MechanismKind::hyperplane:
    case MechanismKind::hilbert:
      return {classify_side(dp0, dp1)};
    case MechanismKind::ptolemaic:
      return {classify_ptolemaic(dp0, dp1, mech.param * k)};
    case MechanismKind::combined:
      return {classify_side(dp0, dp1), classify_ptolemaic(dp0, dp1, mech.param * k)};
  }
  return {};
}

ClassSet excluded_classes(const Mechanism& mech, double k, const QueryEval& q) {
  switch (mech.kind) {
    case MechanismKind::ball_in:
    case MechanismKind::ball_out: {
      ClassSet out;
      if (q.a > mech.param + q.t) out.insert(ClassTag::inside);
      if (q.a < mech.param - q.t) out.insert(ClassTag::outside);
      return out;
    }
    case MechanismKind::hyperplane: {
      ClassSet out;
      if (q.a - q.b > 2.0 * q.t) out.insert(ClassTag::left);
      if (q.b - q.a > 2.0 * q.t) out.insert(ClassTag::right);
      return out;
    }
    case MechanismKind::hilbert:
      return exclude_hilbert(k, q);
    case MechanismKind::ptolemaic:
      return exclude_ptolemaic(k, mech.param, q);
    case MechanismKind::combined:
      return exclude_hilbert(k, q) | exclude_ptolemaic(k, mech.param, q);
  }
  return {};
}

ClassSet excluded_classes(const Partition& pe, const QueryEval& q) {
  return excluded_classes(pe.mechanism, pe.pair.k, q);
}

std::shared_ptr<const std::vector<double>> pivot_distances(const Dataset& ds,
                                                           const Dataset& refs,
                                                           std::size_t pivot) {
  if (pivot >= refs.size()) fail(ErrorCode::invalid_argument, "pivot id out of range");
  if (refs.dim() != ds.dim() || !(refs.metric() == ds.metric())) {
    fail(ErrorCode::dimension_mismatch,
         "reference points must share the dataset's dimension and metric");
  }
  auto out = std::make_shared<std::vector<double>>(ds.size());
  const auto p = refs.row(pivot);
  for (std::size_t s = 0; s < ds.size(); ++s) (*out)[s] = ds.distance_to(p, s);
  return out;
}

Partition build_partition(PivotPair pair, const Mechanism& mech,
                          std::shared_ptr<const std::vector<double>> dp0,
                          std::shared_ptr<const std::vector<double>> dp1) {
  mech.validate();
  if (!(pair.k > 0.0)) fail(ErrorCode::degenerate_pivots, "pivot distance is zero");
  if (!dp0 || !dp1 || dp0->size() != dp1->size()) {
    fail(ErrorCode::invalid_argument, "pivot distance columns differ in length");
  }
  const std::size_t n = dp0->size();
  Partition pe;
  pe.pair = pair;
  pe.mechanism = mech;
  pe.labels.resize(n);
  const double radius = mech.param * pair.k;
  const auto& c = *dp0;
  const auto& d = *dp1;
  switch (mech.kind) {
    case MechanismKind::ptolemaic:
      for (std::size_t s = 0; s < n; ++s) pe.labels[s] = classify_ptolemaic(c[s], d[s], radius);
      break;
    case MechanismKind::hyperplane:
    case MechanismKind::hilbert:
      for (std::size_t s = 0; s < n; ++s) pe.labels[s] = classify_side(c[s], d[s]);
      break;
    case MechanismKind::combined:
      pe.ptolemaic_labels.resize(n);
      for (std::size_t s = 0; s < n; ++s) {
        pe.labels[s] = classify_side(c[s], d[s]);
        pe.ptolemaic_labels[s] = classify_ptolemaic(c[s], d[s], radius);
      }
      break;
    case MechanismKind::ball_in:
    case MechanismKind::ball_out:
      for (std::size_t s = 0; s < n; ++s) {
        const ClassSet m = classify_point(c[s], d[s], pair.k, mech);
        pe.labels[s] = m.contains(ClassTag::inside) ? ClassTag::inside : ClassTag::outside;
      }
      break;
  }
  pe.dp0 = std::move(dp0);
  pe.dp1 = std::move(dp1);
  return pe;
}

Partition build_partition(const Dataset& ds, const Dataset& refs,
                          PivotPair pair, const Mechanism& mech) {
  if (pair.i0 >= refs.size() || pair.i1 >= refs.size()) {
    fail(ErrorCode::invalid_argument, "pivot id out of range");
  }
  if (pair.i0 == pair.i1 || !(pair.k > 0.0)) {
    fail(ErrorCode::degenerate_pivots, "pivot pair is degenerate");
  }
  return build_partition(pair, mech, pivot_distances(ds, refs, pair.i0),
                         pivot_distances(ds, refs, pair.i1));
}

Partition build_partition(const Dataset& ds, PivotPair pair, const Mechanism& mech) {
  return build_partition(ds, ds, pair, mech);
}

double median_pivot_distance(const Dataset& ds, const Dataset& refs,
                             std::size_t pivot) {
  if (ds.empty()) fail(ErrorCode::invalid_argument, "median of an empty dataset");
  std::vector<double> d = *pivot_distances(ds, refs, pivot);
  const auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
  std::nth_element(d.begin(), mid, d.end());
  return *mid;
}

}  // namespace pivex
