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

#include "pivex/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "pivex/error.hpp"
#include "pivex/random.hpp"

namespace pivex {

namespace {

// Seed stream ids within one (seed, dim) cell.
constexpr std::uint64_t kDataStream = 0;
constexpr std::uint64_t kQueryStream = 1;
constexpr std::uint64_t kPivotStream = 2;

template <class Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  fail(ErrorCode::invalid_argument,
       "invalid value '" + std::string(value) + "' for '" + std::string(key) + "'");
}

std::uint64_t parse_u64(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) bad_value(key, v);
  return out;
}

double parse_double(std::string_view key, std::string_view v) {
  // from_chars for double is missing from older libstdc++.
  const std::string s(v);
  char* end = nullptr;
  const double out = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(out)) bad_value(key, v);
  return out;
}

std::vector<std::size_t> parse_sizes(std::string_view key, std::string_view v) {
  std::vector<std::size_t> out;
  for (auto item : split(v, ',')) out.push_back(parse_u64(key, item));
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(key, v);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

void l1_normalise(std::span<double> row) {
  double sum = 0.0;
  for (double v : row) sum += v;
  if (sum > 0.0) {
    for (double& v : row) v /= sum;
  } else {
    for (double& v : row) v = 1.0 / static_cast<double>(row.size());
  }
}

// Exact nearest-neighbour search in Euclidean space, used for the
// environment check on large uniform sets.
class KdTree {
 public:
  explicit KdTree(const Dataset& ds) : dim_(ds.dim()), n_(ds.size()) {
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    src_ = &ds;
    if (n_ > 0) build(0, n_, 0);
    coords_.resize(n_ * dim_);
    for (std::size_t i = 0; i < n_; ++i) {
      auto r = ds.row(order_[i]);
      std::copy(r.begin(), r.end(), coords_.begin() + static_cast<std::ptrdiff_t>(i * dim_));
    }
  }

  // Squared distance from stored position `self` to its nearest neighbour.
  double nearest_sq(std::size_t self) const {
    double best = std::numeric_limits<double>::infinity();
    search(0, coords_.data() + self * dim_, self, best);
    return best;
  }

  std::size_t size() const noexcept { return n_; }

 private:
  static constexpr std::size_t kLeaf = 16;
  struct Node {
    std::size_t lo, hi;
    std::int64_t left = -1, right = -1;
    std::size_t axis = 0;
    double split = 0.0;
  };

  std::int64_t build(std::size_t lo, std::size_t hi, std::size_t depth) {
    const auto id = static_cast<std::int64_t>(nodes_.size());
    nodes_.push_back({lo, hi});
    if (hi - lo <= kLeaf) return id;
    const std::size_t axis = depth % dim_;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(lo),
                     order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(hi),
                     [&](std::size_t a, std::size_t b) {
                       return src_->row(a)[axis] < src_->row(b)[axis];
                     });
    const double split = src_->row(order_[mid])[axis];
    const auto left = build(lo, mid, depth + 1);
    const auto right = build(mid, hi, depth + 1);
    Node& node = nodes_[static_cast<std::size_t>(id)];
    node.axis = axis;
    node.split = split;
    node.left = left;
    node.right = right;
    return id;
  }

  void search(std::int64_t id, const double* q, std::size_t self, double& best) const {
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    if (node.left < 0) {
      for (std::size_t i = node.lo; i < node.hi; ++i) {
        if (i == self) continue;
        const double* p = coords_.data() + i * dim_;
        double acc = 0.0;
        for (std::size_t d = 0; d < dim_ && acc < best; ++d) {
          const double diff = q[d] - p[d];
          acc += diff * diff;
        }
        if (acc < best) best = acc;
      }
      return;
    }
    const double diff = q[node.axis] - node.split;
    const auto near = diff < 0.0 ? node.left : node.right;
    const auto far = diff < 0.0 ? node.right : node.left;
    search(near, q, self, best);
    if (diff * diff < best) search(far, q, self, best);
  }

  std::size_t dim_;
  std::size_t n_;
  const Dataset* src_ = nullptr;
  std::vector<std::size_t> order_;
  std::vector<double> coords_;
  std::vector<Node> nodes_;
};

}  // namespace

// ---------------------------------------------------------------------------
// ExperimentConfig

std::vector<double> ExperimentConfig::tau_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) {
    fail(ErrorCode::invalid_argument, "tau grid needs step > 0 and hi >= lo");
  }
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e10) / 1e10);
  }
  return out;
}

std::vector<double> parse_tau_list(std::string_view text) {
  text = trim(text);
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) bad_value("taus", text);
    return ExperimentConfig::tau_grid(parse_double("taus", parts[0]),
                                      parse_double("taus", parts[1]),
                                      parse_double("taus", parts[2]));
  }
  std::vector<double> out;
  for (auto item : split(text, ',')) out.push_back(parse_double("taus", item));
  return out;
}

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "dims") {
    dims = parse_sizes(key, value);
  } else if (key == "n_data") {
    n_data = parse_u64(key, value);
  } else if (key == "n_queries") {
    n_queries = parse_u64(key, value);
  } else if (key == "pivots") {
    pivot_counts = parse_sizes(key, value);
  } else if (key == "taus") {
    tau_values = parse_tau_list(value);
  } else if (key == "tau") {
    if (value == "auto") {
      tau.reset();
    } else {
      tau = parse_double(key, value);
    }
  } else if (key == "mechanisms") {
    mechanisms.clear();
    for (auto item : split(value, ',')) mechanisms.push_back(parse_mechanism_kind(item));
  } else if (key == "seed") {
    seed = parse_u64(key, value);
  } else if (key == "knn_k") {
    knn_k = parse_u64(key, value);
  } else if (key == "threshold") {
    if (value == "knn") {
      threshold = ThresholdMode::per_query_knn;
    } else if (value == "global-mean") {
      threshold = ThresholdMode::global_mean;
    } else {
      bad_value(key, value);
    }
  } else if (key == "pivots_in_dataset") {
    pivots_in_dataset = parse_bool(key, value);
  } else if (key == "workers") {
    workers = parse_u64(key, value);
  } else if (key == "metric") {
    metric = MetricId::parse(value);
  } else {
    fail(ErrorCode::invalid_argument, "unknown config key '" + std::string(key) + "'");
  }
}

void ExperimentConfig::load_text(std::string_view text) {
  for (auto line : split(text, '\n')) {
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::invalid_argument, "config line without '=': " + std::string(line));
    }
    set(line.substr(0, eq), line.substr(eq + 1));
  }
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream out;
  out << "dims=" << join_sizes(dims) << '\n';
  out << "n_data=" << n_data << '\n';
  out << "n_queries=" << n_queries << '\n';
  out << "pivots=" << join_sizes(pivot_counts) << '\n';
  out << "taus=";
  for (std::size_t i = 0; i < tau_values.size(); ++i) {
    out << (i ? "," : "") << format_double(tau_values[i]);
  }
  out << '\n';
  out << "tau=" << (tau ? format_double(*tau) : std::string("auto")) << '\n';
  out << "mechanisms=";
  for (std::size_t i = 0; i < mechanisms.size(); ++i) {
    out << (i ? "," : "") << mechanism_name(mechanisms[i]);
  }
  out << '\n';
  out << "seed=" << seed << '\n';
  out << "knn_k=" << knn_k << '\n';
  out << "threshold=" << (threshold == ThresholdMode::global_mean ? "global-mean" : "knn") << '\n';
  out << "pivots_in_dataset=" << (pivots_in_dataset ? "true" : "false") << '\n';
  out << "workers=" << workers << '\n';
  out << "metric=" << metric.to_string() << '\n';
  return out.str();
}

void ExperimentConfig::validate() const {
  auto bad = [](const std::string& msg) { fail(ErrorCode::invalid_argument, msg); };
  if (dims.empty()) bad("dims must not be empty");
  for (auto d : dims) {
    if (d < 1) bad("dims must be >= 1");
  }
  if (n_queries < 1) bad("n_queries must be >= 1");
  if (knn_k < 1) bad("knn_k must be >= 1");
  if (n_data < knn_k) bad("n_data must be >= knn_k");
  if (pivot_counts.empty()) bad("pivots must not be empty");
  for (auto p : pivot_counts) {
    if (p < 2) bad("each pivot count must be >= 2");
    if (pivots_in_dataset && p > n_data) bad("more in-dataset pivots than data points");
  }
  if (tau_values.empty()) bad("taus must not be empty");
  for (double t : tau_values) Mechanism::ptolemaic(t).validate();
  if (tau) Mechanism::ptolemaic(*tau).validate();
  if (mechanisms.empty()) bad("mechanisms must not be empty");
  if (workers < 1) bad("workers must be >= 1");
}

// ---------------------------------------------------------------------------
// Report

std::uint64_t ReportRow::total_excluded() const noexcept {
  return std::accumulate(excluded.begin(), excluded.end(), std::uint64_t{0});
}

std::uint64_t ReportRow::total_distance_calls() const noexcept {
  return std::accumulate(distance_calls.begin(), distance_calls.end(), std::uint64_t{0});
}

double ReportRow::mean_exclusion_rate() const noexcept {
  const double denom = static_cast<double>(excluded.size()) * static_cast<double>(n_points);
  return denom > 0.0 ? static_cast<double>(total_excluded()) / denom : 0.0;
}

double ReportRow::mean_distance_calls() const noexcept {
  return excluded.empty() ? 0.0
                          : static_cast<double>(total_distance_calls()) /
                                static_cast<double>(distance_calls.size());
}

void ExclusionReport::sort_rows() {
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& x, const ReportRow& y) {
    auto key = [](const ReportRow& r) {
      return std::tuple(r.dim, static_cast<int>(r.mechanism.kind),
                        r.mechanism.uses_tau() ? r.mechanism.param : 0.0, r.n_pivots);
    };
    return key(x) < key(y);
  });
}

void ExclusionReport::write_csv(std::ostream& out) const {
  out << "dim,mechanism,tau,n_pivots,mean_exclusion_rate,mean_distance_calls,seed\n";
  char buf[64];
  for (const auto& r : rows) {
    out << r.dim << ',' << mechanism_name(r.mechanism.kind) << ',';
    if (r.mechanism.uses_tau()) out << format_double(r.mechanism.param);
    out << ',' << r.n_pivots << ',';
    std::snprintf(buf, sizeof buf, "%.6f", r.mean_exclusion_rate());
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.6f", r.mean_distance_calls());
    out << buf << ',' << seed << '\n';
  }
}

const ReportRow* ExclusionReport::find(std::size_t dim, MechanismKind kind,
                                       std::size_t n_pivots,
                                       std::optional<double> tau) const {
  for (const auto& r : rows) {
    if (r.dim != dim || r.mechanism.kind != kind || r.n_pivots != n_pivots) continue;
    if (tau && std::abs(r.mechanism.param - *tau) > 1e-9) continue;
    return &r;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Data and thresholds

Dataset generate_uniform(std::size_t dim, std::size_t n, std::uint64_t seed, MetricId metric) {
  if (dim < 1) fail(ErrorCode::invalid_argument, "dim must be >= 1");
  Rng rng(seed);
  std::vector<double> values(n * dim);
  for (double& v : values) v = rng.uniform();
  if (metric.requires_distribution()) {
    for (std::size_t i = 0; i < n; ++i) l1_normalise({values.data() + i * dim, dim});
  }
  return Dataset(dim, std::move(values), metric);
}

double calibrate_threshold(const Dataset& ds, std::span<const double> q, std::size_t k) {
  if (k < 1) fail(ErrorCode::invalid_argument, "k must be >= 1");
  if (ds.size() < k) {
    fail(ErrorCode::invalid_argument, "dataset has fewer than k = " + std::to_string(k) + " points");
  }
  ds.check_query(q);
  std::vector<double> d(ds.size());
  for (std::size_t s = 0; s < ds.size(); ++s) d[s] = ds.distance_to(q, s);
  auto kth = d.begin() + static_cast<std::ptrdiff_t>(k - 1);
  std::nth_element(d.begin(), kth, d.end());
  return *kth;
}

double mean_nn_distance(const Dataset& ds) {
  if (ds.size() < 2) fail(ErrorCode::invalid_argument, "need at least two points");
  const MetricId& m = ds.metric();
  double sum = 0.0;
  if (m.kind == MetricKind::euclidean) {
    KdTree tree(ds);
    for (std::size_t i = 0; i < tree.size(); ++i) {
      const double d = std::sqrt(tree.nearest_sq(i));
      sum += m.sqrt ? std::sqrt(d) : d;
    }
  } else {
    for (std::size_t i = 0; i < ds.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < ds.size(); ++j) {
        if (j != i) best = std::min(best, ds.distance(i, j));
      }
      sum += best;
    }
  }
  return sum / static_cast<double>(ds.size());
}

// ---------------------------------------------------------------------------
// Exclusion measurement

std::vector<PivotPair> all_pairs(const Dataset& refs, std::size_t n_pivots) {
  if (n_pivots > refs.size()) fail(ErrorCode::invalid_argument, "not enough reference points");
  std::vector<PivotPair> pairs;
  pairs.reserve(n_pivots * (n_pivots - 1) / 2);
  for (std::size_t i = 0; i < n_pivots; ++i) {
    for (std::size_t j = i + 1; j < n_pivots; ++j) pairs.push_back(PivotPair::make(refs, i, j));
  }
  return pairs;
}

namespace {

std::vector<Partition> partitions_for(
    const Dataset& refs, std::size_t n_pivots, const Mechanism& mech,
    const std::vector<std::shared_ptr<const std::vector<double>>>& columns) {
  std::vector<Partition> out;
  for (const PivotPair& pair : all_pairs(refs, n_pivots)) {
    out.push_back(build_partition(pair, mech, columns[pair.i0], columns[pair.i1]));
  }
  return out;
}

ReportRow run_queries(const ExclusionIndex& index, std::span<const QuerySpec> queries,
                      std::size_t workers) {
  ReportRow row;
  row.n_points = index.data().size();
  row.excluded.resize(queries.size());
  row.distance_calls.resize(queries.size());
  parallel_for(queries.size(), workers, [&](std::size_t i) {
    const QueryOutcome out = index.range_query(queries[i]);
    row.excluded[i] = out.excluded_count;
    row.distance_calls[i] = out.distance_calls;
  });
  return row;
}

}  // namespace

double exclusion_power(const Dataset& ds, const Dataset& refs,
                       std::span<const QuerySpec> queries, const Mechanism& mech,
                       std::size_t workers) {
  mech.validate();
  std::vector<std::shared_ptr<const std::vector<double>>> columns;
  for (std::size_t p = 0; p < refs.size(); ++p) columns.push_back(pivot_distances(ds, refs, p));
  auto data = std::make_shared<const Dataset>(ds);
  auto pivots = std::make_shared<const Dataset>(refs);
  ExclusionIndex index(data, pivots, partitions_for(refs, refs.size(), mech, columns));
  return run_queries(index, queries, workers).mean_exclusion_rate();
}

double exclusion_power(const Dataset& ds, std::span<const QuerySpec> queries,
                       std::span<const std::size_t> pivots, const Mechanism& mech,
                       std::size_t workers) {
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    for (std::size_t j = i + 1; j < pivots.size(); ++j) {
      if (pivots[i] == pivots[j]) fail(ErrorCode::degenerate_pivots, "pivot ids must be distinct");
    }
  }
  return exclusion_power(ds, ds.select(pivots), queries, mech, workers);
}

std::vector<QuerySpec> Workload::query_specs() const {
  std::vector<QuerySpec> out;
  out.reserve(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) out.push_back({queries.row(i), thresholds[i]});
  return out;
}

Workload make_workload(const ExperimentConfig& cfg, std::size_t dim) {
  cfg.validate();
  Workload w;
  w.dim = dim;
  const std::size_t max_pivots = *std::max_element(cfg.pivot_counts.begin(), cfg.pivot_counts.end());

  auto data = std::make_shared<Dataset>(
      generate_uniform(dim, cfg.n_data, derive_seed(cfg.seed, dim, kDataStream), cfg.metric));
  w.queries = generate_uniform(dim, cfg.n_queries, derive_seed(cfg.seed, dim, kQueryStream), cfg.metric);

  // Queries must not coincide with data points.
  std::unordered_set<std::string_view> rows;
  auto bytes = [&](const Dataset& ds, std::size_t i) {
    auto r = ds.row(i);
    return std::string_view(reinterpret_cast<const char*>(r.data()), r.size_bytes());
  };
  for (std::size_t i = 0; i < data->size(); ++i) rows.insert(bytes(*data, i));
  for (std::size_t i = 0; i < w.queries.size(); ++i) {
    if (rows.contains(bytes(w.queries, i))) {
      fail(ErrorCode::internal, "query stream intersects the data set");
    }
  }

  if (cfg.pivots_in_dataset) {
    // First max_pivots ids of a seeded shuffle of the data.
    std::vector<std::size_t> ids(data->size());
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    Rng rng(derive_seed(cfg.seed, dim, kPivotStream));
    for (std::size_t i = 0; i < max_pivots; ++i) {
      std::swap(ids[i], ids[i + rng.below(ids.size() - i)]);
    }
    ids.resize(max_pivots);
    w.refs = std::make_shared<const Dataset>(data->select(ids));
  } else {
    w.refs = std::make_shared<const Dataset>(
        generate_uniform(dim, max_pivots, derive_seed(cfg.seed, dim, kPivotStream), cfg.metric));
  }
  w.data = data;

  w.thresholds.resize(w.queries.size());
  parallel_for(w.queries.size(), cfg.workers, [&](std::size_t i) {
    w.thresholds[i] = calibrate_threshold(*w.data, w.queries.row(i), cfg.knn_k);
  });
  if (cfg.threshold == ThresholdMode::global_mean) {
    const double mean = std::accumulate(w.thresholds.begin(), w.thresholds.end(), 0.0) /
                        static_cast<double>(w.thresholds.size());
    std::fill(w.thresholds.begin(), w.thresholds.end(), mean);
  }

  w.pivot_columns.resize(max_pivots);
  parallel_for(max_pivots, cfg.workers, [&](std::size_t p) {
    w.pivot_columns[p] = pivot_distances(*w.data, *w.refs, p);
  });
  return w;
}

ReportRow evaluate(const Workload& w, std::size_t n_pivots, const Mechanism& mech,
                   std::size_t workers) {
  mech.validate();
  if (n_pivots > w.pivot_columns.size()) {
    fail(ErrorCode::invalid_argument, "workload holds fewer pivots than requested");
  }
  ExclusionIndex index(w.data, w.refs, partitions_for(*w.refs, n_pivots, mech, w.pivot_columns));
  const auto specs = w.query_specs();
  ReportRow row = run_queries(index, specs, workers);
  row.dim = w.dim;
  row.mechanism = mech;
  row.n_pivots = n_pivots;
  return row;
}

namespace {

// Ptolemaic rows for every tau at one pivot count; returns the best tau
// (lowest tau wins ties).
double local_tau_sweep(const ExperimentConfig& cfg, const Workload& w, std::size_t n_pivots,
                       std::vector<ReportRow>* rows) {
  double best_tau = cfg.tau_values.front();
  double best_rate = -1.0;
  for (double tau : cfg.tau_values) {
    ReportRow row = evaluate(w, n_pivots, Mechanism::ptolemaic(tau), cfg.workers);
    const double rate = row.mean_exclusion_rate();
    if (rate > best_rate) {
      best_rate = rate;
      best_tau = tau;
    }
    if (rows) rows->push_back(std::move(row));
  }
  return best_tau;
}

}  // namespace

ExclusionReport sweep_tau(const ExperimentConfig& cfg) {
  cfg.validate();
  if (std::find(cfg.mechanisms.begin(), cfg.mechanisms.end(), MechanismKind::ptolemaic) ==
      cfg.mechanisms.end()) {
    fail(ErrorCode::invalid_argument, "tau sweep requires the ptolemaic mechanism");
  }
  ExclusionReport report;
  report.seed = cfg.seed;
  for (std::size_t dim : cfg.dims) {
    const Workload w = make_workload(cfg, dim);
    for (std::size_t i = 0; i < cfg.pivot_counts.size(); ++i) {
      const double best = local_tau_sweep(cfg, w, cfg.pivot_counts[i], &report.rows);
      if (i == 0) report.best_tau[dim] = best;
    }
  }
  report.sort_rows();
  return report;
}

ExclusionReport sweep_dimensions(const ExperimentConfig& cfg) {
  cfg.validate();
  for (auto kind : cfg.mechanisms) {
    if (kind == MechanismKind::ball_in || kind == MechanismKind::ball_out) {
      fail(ErrorCode::invalid_argument,
           "dimension sweep supports hyperplane, hilbert, ptolemaic and combined");
    }
  }
  const bool needs_tau = std::any_of(cfg.mechanisms.begin(), cfg.mechanisms.end(), [](auto k) {
    return k == MechanismKind::ptolemaic || k == MechanismKind::combined;
  });
  ExclusionReport report;
  report.seed = cfg.seed;
  for (std::size_t dim : cfg.dims) {
    const Workload w = make_workload(cfg, dim);
    double tau = cfg.tau.value_or(0.0);
    if (needs_tau) {
      if (!cfg.tau) tau = local_tau_sweep(cfg, w, cfg.pivot_counts.front(), nullptr);
      report.best_tau[dim] = tau;
    }
    for (auto kind : cfg.mechanisms) {
      const Mechanism mech{kind, (kind == MechanismKind::ptolemaic || kind == MechanismKind::combined)
                                     ? tau
                                     : 0.0};
      for (std::size_t np : cfg.pivot_counts) {
        report.rows.push_back(evaluate(w, np, mech, cfg.workers));
      }
    }
  }
  report.sort_rows();
  return report;
}

}  // namespace pivex
