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

#include <cstdint>
#include <string>
#include <vector>

#include "pivex/metric.hpp"

namespace pivex {

// Self-contained randomized correctness suites, runnable from the CLI.

struct VerifyConfig {
  std::uint64_t cases = 1000;
  std::uint64_t seed = 1;
  std::vector<MetricId> metrics{MetricId{}, MetricId{MetricKind::euclidean, true}};
};

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  std::string first_violation;

  bool passed() const noexcept { return violations == 0; }
};

/// Suites, each run for every metric of the config:
///   exclusion_safety     no point of an excluded class lies within t
///   hilbert_covers_hyperplane
///                        every class hyperplane excludes, hilbert excludes
///   tau_half_equivalence ptolemaic(0.5) skips the same points as hyperplane
///                        (boundary ties exempt)
///   bound_dominance      ptolemaic <= four-point <= true distance (+1e-12)
///   oracle_equivalence   range_query matches brute_force for every mechanism
std::vector<SuiteResult> run_verification(const VerifyConfig& cfg);

}  // namespace pivex
