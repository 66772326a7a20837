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

#include "pivex/pivex.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "pivex/bench.hpp"
#include "pivex/bounds.hpp"
#include "pivex/engine.hpp"
#include "pivex/error.hpp"
#include "pivex/partition.hpp"
#include "pivex/verify.hpp"

#ifndef PIVEX_VERSION
#define PIVEX_VERSION "0.0.0"
#endif

struct pivex_dataset {
  std::shared_ptr<const pivex::Dataset> ds;
};

struct pivex_index {
  std::unique_ptr<pivex::ExclusionIndex> index;
};

struct pivex_experiment {
  pivex::ExperimentConfig cfg;
  std::string snapshot;
};

struct pivex_report {
  pivex::ExclusionReport report;
};

namespace {

thread_local std::string g_last_error;

pivex_status set_error(pivex_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
pivex_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return PIVEX_OK;
  } catch (const pivex::Error& e) {
    return set_error(static_cast<pivex_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(PIVEX_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(PIVEX_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(PIVEX_ERR_INTERNAL, "unknown error");
  }
}

void require(bool cond, const char* what) {
  if (!cond) pivex::fail(pivex::ErrorCode::invalid_argument, what);
}

pivex::MetricId metric_or_default(const char* metric) {
  return metric ? pivex::MetricId::parse(metric) : pivex::MetricId{};
}

pivex::Mechanism to_cpp(pivex_mechanism m) {
  require(m.kind >= PIVEX_BALL_IN && m.kind <= PIVEX_COMBINED, "unknown mechanism kind");
  pivex::Mechanism out{static_cast<pivex::MechanismKind>(m.kind), m.param};
  out.validate();
  return out;
}

std::ofstream open_out(const char* path) {
  require(path != nullptr, "null path");
  std::ofstream out(path, std::ios::trunc);
  if (!out) pivex::fail(pivex::ErrorCode::io, std::string("cannot open '") + path + "' for writing");
  return out;
}

void close_out(std::ofstream& out, const char* path) {
  out.close();
  if (!out) pivex::fail(pivex::ErrorCode::io, std::string("write to '") + path + "' failed");
}

void copy_string(char* dst, std::size_t cap, const std::string& src) {
  if (cap == 0) return;
  const std::size_t n = std::min(cap - 1, src.size());
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

}  // namespace

extern "C" {

const char* pivex_version(void) { return PIVEX_VERSION; }

const char* pivex_last_error(void) { return g_last_error.c_str(); }

const char* pivex_status_string(pivex_status status) {
  switch (status) {
    case PIVEX_OK: return "ok";
    case PIVEX_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PIVEX_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case PIVEX_ERR_DOMAIN: return "domain error";
    case PIVEX_ERR_DEGENERATE_PIVOTS: return "degenerate pivots";
    case PIVEX_ERR_IO: return "i/o error";
    case PIVEX_ERR_FORMAT: return "format error";
    case PIVEX_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

pivex_status pivex_metric_canonical(const char* metric, char* buf, size_t cap) {
  return guarded([&] {
    require(metric && buf && cap > 0, "null argument");
    const std::string name = pivex::MetricId::parse(metric).to_string();
    require(name.size() < cap, "buffer too small");
    copy_string(buf, cap, name);
  });
}

pivex_status pivex_distance(const char* metric, const double* a, const double* b, size_t dim,
                            double* out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    *out = pivex::distance(metric_or_default(metric), {a, dim}, {b, dim});
  });
}

pivex_status pivex_dataset_create(const double* values, size_t dim, size_t count,
                                  const char* metric, pivex_dataset** out) {
  return guarded([&] {
    require(out && (values || count == 0), "null argument");
    std::vector<double> v(values, values + dim * count);
    auto ds = std::make_shared<const pivex::Dataset>(dim, std::move(v), metric_or_default(metric));
    *out = new pivex_dataset{std::move(ds)};
  });
}

pivex_status pivex_dataset_generate_uniform(size_t dim, size_t count, uint64_t seed,
                                            const char* metric, pivex_dataset** out) {
  return guarded([&] {
    require(out, "null argument");
    auto ds = std::make_shared<const pivex::Dataset>(
        pivex::generate_uniform(dim, count, seed, metric_or_default(metric)));
    *out = new pivex_dataset{std::move(ds)};
  });
}

pivex_status pivex_dataset_load(const char* path, const char* metric, pivex_dataset** out) {
  return guarded([&] {
    require(path && out, "null argument");
    auto ds = std::make_shared<const pivex::Dataset>(
        pivex::load_dataset(path, metric_or_default(metric)));
    *out = new pivex_dataset{std::move(ds)};
  });
}

pivex_status pivex_dataset_save(const pivex_dataset* ds, const char* path) {
  return guarded([&] {
    require(ds && path, "null argument");
    pivex::save_dataset(*ds->ds, path);
  });
}

size_t pivex_dataset_dim(const pivex_dataset* ds) { return ds ? ds->ds->dim() : 0; }

size_t pivex_dataset_count(const pivex_dataset* ds) { return ds ? ds->ds->size() : 0; }

const double* pivex_dataset_row(const pivex_dataset* ds, size_t i) {
  if (!ds || i >= ds->ds->size()) return nullptr;
  return ds->ds->row(i).data();
}

void pivex_dataset_free(pivex_dataset* ds) { delete ds; }

pivex_status pivex_calibrate_threshold(const pivex_dataset* ds, const double* q, size_t dim,
                                       size_t k, double* out) {
  return guarded([&] {
    require(ds && q && out, "null argument");
    *out = pivex::calibrate_threshold(*ds->ds, {q, dim}, k);
  });
}

pivex_status pivex_mean_nn_distance(const pivex_dataset* ds, double* out) {
  return guarded([&] {
    require(ds && out, "null argument");
    *out = pivex::mean_nn_distance(*ds->ds);
  });
}

pivex_status pivex_project_to_plane(double dp0, double dp1, double k, pivex_plane_point* out) {
  return guarded([&] {
    require(out, "null argument");
    const auto p = pivex::project_to_plane(dp0, dp1, k);
    *out = {p.x, p.y};
  });
}

pivex_status pivex_ptolemaic_lower_bound(const pivex_quad* qd, double* out) {
  return guarded([&] {
    require(qd && out, "null argument");
    *out = pivex::ptolemaic_lower_bound({qd->a, qd->b, qd->c, qd->d, qd->k});
  });
}

pivex_status pivex_fourpoint_lower_bound(const pivex_quad* qd, double* out) {
  return guarded([&] {
    require(qd && out, "null argument");
    *out = pivex::fourpoint_lower_bound({qd->a, qd->b, qd->c, qd->d, qd->k});
  });
}

pivex_status pivex_project_dataset_csv(const pivex_dataset* ds, size_t i0, size_t i1,
                                       const char* path) {
  return guarded([&] {
    require(ds, "null argument");
    auto out = open_out(path);
    pivex::project_dataset(*ds->ds, i0, i1, out);
    close_out(out, path);
  });
}

pivex_status pivex_boundaries_csv(double k, double tau, double t, double y_max, const char* path) {
  return guarded([&] {
    const auto curves = pivex::ptolemaic_boundaries(k, tau, t, y_max);
    auto out = open_out(path);
    pivex::write_boundaries_csv(curves, out);
    close_out(out, path);
  });
}

pivex_status pivex_mechanism_parse(const char* name, pivex_mechanism_kind* out) {
  return guarded([&] {
    require(name && out, "null argument");
    *out = static_cast<pivex_mechanism_kind>(pivex::parse_mechanism_kind(name));
  });
}

pivex_status pivex_classify_point(double dp0, double dp1, double k, pivex_mechanism mech,
                                  unsigned* class_mask) {
  return guarded([&] {
    require(class_mask, "null argument");
    require(k > 0.0 && dp0 >= 0.0 && dp1 >= 0.0, "distances must be nonnegative and k > 0");
    *class_mask = pivex::classify_point(dp0, dp1, k, to_cpp(mech)).bits();
  });
}

pivex_status pivex_excluded_classes(pivex_mechanism mech, double k, double a, double b, double t,
                                    unsigned* class_mask) {
  return guarded([&] {
    require(class_mask, "null argument");
    require(k > 0.0 && a >= 0.0 && b >= 0.0 && t >= 0.0,
            "distances and threshold must be nonnegative and k > 0");
    *class_mask = pivex::excluded_classes(to_cpp(mech), k, {a, b, t}).bits();
  });
}

pivex_status pivex_index_build(const pivex_dataset* data, const pivex_dataset* refs,
                               const size_t* pivot_ids, size_t n_pivots, pivex_mechanism mech,
                               pivex_index** out) {
  return guarded([&] {
    require(data && out && (pivot_ids || n_pivots == 0), "null argument");
    const auto m = to_cpp(mech);
    const auto& pool = refs ? refs->ds : data->ds;
    std::vector<pivex::Partition> parts;
    for (size_t i = 0; i < n_pivots; ++i) {
      for (size_t j = i + 1; j < n_pivots; ++j) {
        const auto pair = pivex::PivotPair::make(*pool, pivot_ids[i], pivot_ids[j]);
        parts.push_back(pivex::build_partition(*data->ds, *pool, pair, m));
      }
    }
    auto index = std::make_unique<pivex::ExclusionIndex>(data->ds, pool, std::move(parts));
    *out = new pivex_index{std::move(index)};
  });
}

size_t pivex_index_partition_count(const pivex_index* index) {
  return index ? index->index->partitions().size() : 0;
}

pivex_status pivex_index_range_query(const pivex_index* index, const double* q, size_t dim,
                                     double t, size_t* ids, size_t cap, pivex_query_stats* stats) {
  return guarded([&] {
    require(index && q && stats && (ids || cap == 0), "null argument");
    const auto out = index->index->range_query({{q, dim}, t});
    for (size_t i = 0; i < out.results.size() && i < cap; ++i) ids[i] = out.results[i];
    *stats = {out.results.size(), out.distance_calls, out.excluded_count};
  });
}

void pivex_index_free(pivex_index* index) { delete index; }

pivex_status pivex_brute_force(const pivex_dataset* ds, const double* q, size_t dim, double t,
                               size_t* ids, size_t cap, size_t* n_results) {
  return guarded([&] {
    require(ds && q && n_results && (ids || cap == 0), "null argument");
    const auto out = pivex::brute_force(*ds->ds, {{q, dim}, t});
    for (size_t i = 0; i < out.size() && i < cap; ++i) ids[i] = out[i];
    *n_results = out.size();
  });
}

pivex_status pivex_experiment_create(pivex_experiment** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = new pivex_experiment{};
  });
}

pivex_status pivex_experiment_set(pivex_experiment* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg && key && value, "null argument");
    cfg->cfg.set(key, value);
  });
}

pivex_status pivex_experiment_load_text(pivex_experiment* cfg, const char* text) {
  return guarded([&] {
    require(cfg && text, "null argument");
    cfg->cfg.load_text(text);
  });
}

const char* pivex_experiment_snapshot(pivex_experiment* cfg) {
  if (!cfg) return "";
  cfg->snapshot = cfg->cfg.to_text();
  return cfg->snapshot.c_str();
}

pivex_status pivex_experiment_validate(const pivex_experiment* cfg) {
  return guarded([&] {
    require(cfg, "null argument");
    cfg->cfg.validate();
  });
}

void pivex_experiment_free(pivex_experiment* cfg) { delete cfg; }

pivex_status pivex_sweep_tau(const pivex_experiment* cfg, pivex_report** out) {
  return guarded([&] {
    require(cfg && out, "null argument");
    *out = new pivex_report{pivex::sweep_tau(cfg->cfg)};
  });
}

pivex_status pivex_sweep_dimensions(const pivex_experiment* cfg, pivex_report** out) {
  return guarded([&] {
    require(cfg && out, "null argument");
    *out = new pivex_report{pivex::sweep_dimensions(cfg->cfg)};
  });
}

size_t pivex_report_row_count(const pivex_report* report) {
  return report ? report->report.rows.size() : 0;
}

pivex_status pivex_report_row_at(const pivex_report* report, size_t i, pivex_report_row* out) {
  return guarded([&] {
    require(report && out, "null argument");
    require(i < report->report.rows.size(), "row index out of range");
    const auto& r = report->report.rows[i];
    out->dim = r.dim;
    out->mechanism = {static_cast<pivex_mechanism_kind>(r.mechanism.kind), r.mechanism.param};
    out->n_pivots = r.n_pivots;
    out->n_queries = r.excluded.size();
    out->n_points = r.n_points;
    out->total_excluded = r.total_excluded();
    out->total_distance_calls = r.total_distance_calls();
    out->mean_exclusion_rate = r.mean_exclusion_rate();
    out->mean_distance_calls = r.mean_distance_calls();
  });
}

pivex_status pivex_report_best_tau(const pivex_report* report, size_t dim, double* tau) {
  return guarded([&] {
    require(report && tau, "null argument");
    auto it = report->report.best_tau.find(dim);
    require(it != report->report.best_tau.end(), "no tau recorded for this dimension");
    *tau = it->second;
  });
}

pivex_status pivex_report_write_csv(const pivex_report* report, const char* path) {
  return guarded([&] {
    require(report, "null argument");
    auto out = open_out(path);
    report->report.write_csv(out);
    close_out(out, path);
  });
}

void pivex_report_free(pivex_report* report) { delete report; }

pivex_status pivex_verify(const char* metrics, uint64_t cases, uint64_t seed,
                          pivex_suite_result* results, size_t cap, size_t* n_suites) {
  return guarded([&] {
    require(n_suites && (results || cap == 0), "null argument");
    pivex::VerifyConfig cfg;
    cfg.cases = cases;
    cfg.seed = seed;
    if (metrics) {
      cfg.metrics.clear();
      std::string list(metrics);
      std::size_t start = 0;
      while (start <= list.size()) {
        const auto comma = list.find(',', start);
        const auto item = list.substr(start, comma == std::string::npos ? std::string::npos
                                                                         : comma - start);
        if (!item.empty()) cfg.metrics.push_back(pivex::MetricId::parse(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      require(!cfg.metrics.empty(), "no metric given");
    }
    const auto suites = pivex::run_verification(cfg);
    for (size_t i = 0; i < suites.size() && i < cap; ++i) {
      copy_string(results[i].name, sizeof results[i].name, suites[i].name);
      results[i].checks = suites[i].checks;
      results[i].violations = suites[i].violations;
      copy_string(results[i].first_violation, sizeof results[i].first_violation,
                  suites[i].first_violation);
    }
    *n_suites = suites.size();
  });
}

}  // extern "C"
