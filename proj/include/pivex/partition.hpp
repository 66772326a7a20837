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
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pivex/dataset.hpp"

namespace pivex {

/// Static partition mechanisms over a pivot pair.
///
///   ball_in(M)    inside: d(s,p0) <= M            outside: the rest
///   ball_out(M)   outside: d(s,p0) >= M           inside: the rest
///   hyperplane    left: d(s,p0) <= d(s,p1)        right: the rest
///   hilbert       same classes as hyperplane, four-point exclusion
///   ptolemaic(t)  s1 / s2 / s3, see classify_point
///   combined(t)   hilbert and ptolemaic classes held side by side
enum class MechanismKind : std::uint8_t {
  ball_in,
  ball_out,
  hyperplane,
  hilbert,
  ptolemaic,
  combined,
};

struct Mechanism {
  MechanismKind kind = MechanismKind::hyperplane;
  // Radius M for the ball kinds, tau for ptolemaic/combined, unused otherwise.
  double param = 0.0;

  static Mechanism ball_in(double radius) { return {MechanismKind::ball_in, radius}; }
  static Mechanism ball_out(double radius) { return {MechanismKind::ball_out, radius}; }
  static Mechanism hyperplane() { return {MechanismKind::hyperplane, 0.0}; }
  static Mechanism hilbert() { return {MechanismKind::hilbert, 0.0}; }
  static Mechanism ptolemaic(double tau) { return {MechanismKind::ptolemaic, tau}; }
  static Mechanism combined(double tau) { return {MechanismKind::combined, tau}; }

  bool uses_tau() const noexcept {
    return kind == MechanismKind::ptolemaic || kind == MechanismKind::combined;
  }
  bool is_ball() const noexcept {
    return kind == MechanismKind::ball_in || kind == MechanismKind::ball_out;
  }
  double tau() const noexcept { return param; }

  /// Throws unless tau >= 0.5 (tau kinds) or M >= 0 (ball kinds).
  void validate() const;

  friend bool operator==(const Mechanism&, const Mechanism&) = default;
};

std::string_view mechanism_name(MechanismKind kind) noexcept;
/// Accepts the names printed by mechanism_name; throws with the list of
/// valid names otherwise.
MechanismKind parse_mechanism_kind(std::string_view name);

enum class ClassTag : std::uint8_t { left, right, inside, outside, s1, s2, s3 };

std::string_view class_name(ClassTag tag) noexcept;

/// Small bitset over ClassTag.
class ClassSet {
 public:
  constexpr ClassSet() = default;
  constexpr ClassSet(std::initializer_list<ClassTag> tags) {
    for (ClassTag t : tags) insert(t);
  }

  constexpr void insert(ClassTag t) noexcept { bits_ |= bit(t); }
  constexpr bool contains(ClassTag t) const noexcept { return (bits_ & bit(t)) != 0; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr bool intersects(ClassSet o) const noexcept { return (bits_ & o.bits_) != 0; }
  constexpr bool includes(ClassSet o) const noexcept { return (bits_ & o.bits_) == o.bits_; }
  constexpr std::uint8_t bits() const noexcept { return bits_; }

  constexpr ClassSet operator|(ClassSet o) const noexcept { return from_bits(bits_ | o.bits_); }
  constexpr ClassSet& operator|=(ClassSet o) noexcept { bits_ |= o.bits_; return *this; }
  friend constexpr bool operator==(ClassSet, ClassSet) = default;

  static constexpr ClassSet from_bits(unsigned b) noexcept {
    ClassSet s;
    s.bits_ = static_cast<std::uint8_t>(b);
    return s;
  }

 private:
  static constexpr std::uint8_t bit(ClassTag t) noexcept {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(t));
  }
  std::uint8_t bits_ = 0;
};

std::string to_string(ClassSet set);

/// Two reference points, as row indices into a reference set, and their
/// cached distance k = d(p0, p1).
struct PivotPair {
  std::size_t i0 = 0;
  std::size_t i1 = 0;
  double k = 0.0;

  /// Rejects i0 == i1 and coincident points (k == 0).
  static PivotPair make(const Dataset& refs, std::size_t i0, std::size_t i1);
};

/// Query-side distances: a = d(q,p0), b = d(q,p1), threshold t.
struct QueryEval {
  double a = 0.0;
  double b = 0.0;
  double t = 0.0;
};

/// Membership of a datum with pivot distances (dp0, dp1). A single tag for
/// every kind except combined, which yields one hyperplane-side tag and
/// one Ptolemaic tag.
///
/// Ptolemaic classes, with tau*K as the radius:
///   s1: dp0 >= dp1 and dp0 >= tau*K
///   s2: dp0 <  dp1 and dp1 >= tau*K
///   s3: otherwise (both below tau*K)
ClassSet classify_point(double dp0, double dp1, double k, const Mechanism& mech);

/// Classes that cannot hold any s with d(q,s) <= t.
///
/// Ptolemaic:  s1 if b-a > t/tau or a < tau*K - t
///             s2 if a-b >= t/tau or b < tau*K - t
///             s3 if a >= tau*K + t or b >= tau*K + t
/// Hyperplane: left if a-b > 2t, right if b-a > 2t
/// Hilbert:    left if (a^2-b^2)/K > 2t, right if (b^2-a^2)/K > 2t
/// Balls:      inside if a > M + t, outside if a < M - t
/// Combined:   union of the hilbert and ptolemaic sets.
///
/// The s2 test keeps the non-strict comparison; when a-b == t/tau exactly a
/// point at distance exactly t may be skipped. Continuous data never hits it.
ClassSet excluded_classes(const Mechanism& mech, double k, const QueryEval& q);

/// A static partition of a dataset for one pivot pair. `labels` carries the
/// mechanism's class per point; for combined it holds the hyperplane-side
/// tag and `ptolemaic_labels` the three-way tag. Pivot distances are shared
/// with every other partition that uses the same pivot.
struct Partition {
  PivotPair pair;
  Mechanism mechanism;
  std::vector<ClassTag> labels;
  std::vector<ClassTag> ptolemaic_labels;
  std::shared_ptr<const std::vector<double>> dp0;
  std::shared_ptr<const std::vector<double>> dp1;

  std::size_t size() const noexcept { return labels.size(); }

  ClassSet membership(std::size_t s) const noexcept {
    ClassSet m{labels[s]};
    if (!ptolemaic_labels.empty()) m.insert(ptolemaic_labels[s]);
    return m;
  }
};

ClassSet excluded_classes(const Partition& pe, const QueryEval& q);

/// Distances from every row of `ds` to refs[pivot].
std::shared_ptr<const std::vector<double>> pivot_distances(const Dataset& ds,
                                                           const Dataset& refs,
                                                           std::size_t pivot);

Partition build_partition(PivotPair pair, const Mechanism& mech,
                          std::shared_ptr<const std::vector<double>> dp0,
                          std::shared_ptr<const std::vector<double>> dp1);

/// Pivots are rows of `refs`, which must share the dataset's metric and
/// dimension.
Partition build_partition(const Dataset& ds, const Dataset& refs,
                          PivotPair pair, const Mechanism& mech);

/// Pivots are rows of `ds` itself.
Partition build_partition(const Dataset& ds, PivotPair pair, const Mechanism& mech);

/// Median of d(s, refs[pivot]) over `ds`; the default ball radius.
double median_pivot_distance(const Dataset& ds, const Dataset& refs,
                             std::size_t pivot);

}  // namespace pivex
