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
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pivex/dataset.hpp"
#include "pivex/engine.hpp"
#include "pivex/partition.hpp"

namespace pivex {

enum class ThresholdMode {
  per_query_knn,  // t = distance to the k-th nearest datum, per query
  global_mean,    // t = mean of the per-query values, shared by all queries
};

/// Parameters of an exclusion experiment. Every field has a key=value form
/// (see set()) so that configs can come from files, flags or the C API.
///
///   dims=8,12,16,20          n_data=10000       n_queries=200
///   pivots=10                taus=0.5:1.5:0.1   tau=auto | <value>
///   mechanisms=hyperplane,ptolemaic,hilbert,combined
///   seed=1  knn_k=5  threshold=knn | global-mean
///   pivots_in_dataset=false  workers=1  metric=euclidean
struct ExperimentConfig {
  std::vector<std::size_t> dims{8, 12, 16, 20};
  std::size_t n_data = 10000;
  std::size_t n_queries = 200;
  std::vector<std::size_t> pivot_counts{10};
  std::vector<double> tau_values = tau_grid(0.5, 1.5, 0.1);
  std::optional<double> tau;  // unset: best tau from a local sweep per dim
  std::vector<MechanismKind> mechanisms{MechanismKind::hyperplane, MechanismKind::ptolemaic,
                                        MechanismKind::hilbert, MechanismKind::combined};
  std::uint64_t seed = 1;
  std::size_t knn_k = 5;
  ThresholdMode threshold = ThresholdMode::per_query_knn;
  bool pivots_in_dataset = false;
  std::size_t workers = 1;
  MetricId metric;

  /// Applies one key=value setting; throws invalid_argument on unknown
  /// keys or malformed values.
  void set(std::string_view key, std::string_view value);
  /// Reads "key=value" lines; blank lines and '#' comments are skipped.
  void load_text(std::string_view text);
  /// Canonical key=value snapshot, sufficient to reproduce a run.
  std::string to_text() const;
  void validate() const;

  /// Inclusive grid lo, lo+step, ..., hi with values rounded to 1e-10.
  static std::vector<double> tau_grid(double lo, double hi, double step);
};

/// Accepts "lo:hi:step" or a comma separated list.
std::vector<double> parse_tau_list(std::string_view text);

struct ReportRow {
  std::size_t dim = 0;
  Mechanism mechanism;
  std::size_t n_pivots = 0;
  std::size_t n_points = 0;
  std::vector<std::uint64_t> excluded;        // per query
  std::vector<std::uint64_t> distance_calls;  // per query

  std::uint64_t total_excluded() const noexcept;
  std::uint64_t total_distance_calls() const noexcept;
  /// Sum of excluded counts over (queries * points), divided once.
  double mean_exclusion_rate() const noexcept;
  double mean_distance_calls() const noexcept;
};

struct ExclusionReport {
  std::uint64_t seed = 0;
  std::vector<ReportRow> rows;
  // Tau with the highest Ptolemaic rate per dim (sweep_tau), or the tau
  // used for the tau mechanisms (sweep_dimensions).
  std::map<std::size_t, double> best_tau;

  /// Orders rows on (dim, mechanism, tau, n_pivots).
  void sort_rows();
  /// Header: dim,mechanism,tau,n_pivots,mean_exclusion_rate,mean_distance_calls,seed
  void write_csv(std::ostream& out) const;
  const ReportRow* find(std::size_t dim, MechanismKind kind, std::size_t n_pivots,
                        std::optional<double> tau = std::nullopt) const;
};

/// n i.i.d. points uniform on [0,1]^dim; identical for identical arguments.
/// Divergence metrics receive L1-normalised rows.
Dataset generate_uniform(std::size_t dim, std::size_t n, std::uint64_t seed,
                         MetricId metric = {});

/// Distance from q to its k-th nearest point of ds (k >= 1).
double calibrate_threshold(const Dataset& ds, std::span<const double> q, std::size_t k);

/// Mean over points of the distance to their nearest other point.
double mean_nn_distance(const Dataset& ds);

/// Every pair (i, j), i < j, of the first `n_pivots` rows of `refs`, in
/// lexicographic order.
std::vector<PivotPair> all_pairs(const Dataset& refs, std::size_t n_pivots);

/// Mean over queries of excluded_count / |ds| using all pivot pairs of
/// `refs`.
double exclusion_power(const Dataset& ds, const Dataset& refs,
                       std::span<const QuerySpec> queries, const Mechanism& mech,
                       std::size_t workers = 1);
/// Pivots given as row ids of ds.
double exclusion_power(const Dataset& ds, std::span<const QuerySpec> queries,
                       std::span<const std::size_t> pivots, const Mechanism& mech,
                       std::size_t workers = 1);

/// Data, queries, pivots and thresholds for one dimension of an experiment.
/// Data, queries and pivots come from separate seed streams.
struct Workload {
  std::size_t dim = 0;
  std::shared_ptr<const Dataset> data;
  std::shared_ptr<const Dataset> refs;
  Dataset queries;
  std::vector<double> thresholds;
  std::vector<std::shared_ptr<const std::vector<double>>> pivot_columns;

  std::vector<QuerySpec> query_specs() const;
};

Workload make_workload(const ExperimentConfig& cfg, std::size_t dim);

/// Runs every query of `w` against all pairs of the first n_pivots pivots.
ReportRow evaluate(const Workload& w, std::size_t n_pivots, const Mechanism& mech,
                   std::size_t workers = 1);

/// Ptolemaic rates over cfg.tau_values, per dim and pivot count.
ExclusionReport sweep_tau(const ExperimentConfig& cfg);

/// Rates per (dim, mechanism, pivot count). Tau mechanisms use cfg.tau, or
/// the best tau of a local sweep at the first pivot count.
ExclusionReport sweep_dimensions(const ExperimentConfig& cfg);

}  // namespace pivex
