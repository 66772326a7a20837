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

// pivex command line: dataset generation, exclusion sweeps, pivot-plane
// projections and the randomized verification suites. Talks to the library
// through the C API only.
//
// Exit codes: 0 success, 1 usage or input error, 2 verification failure,
// 3 I/O error.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pivex/pivex.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitIo = 3;

struct CliError {
  int code;
  std::string message;
};

void check(pivex_status st) {
  if (st == PIVEX_OK) return;
  const int code = (st == PIVEX_ERR_IO || st == PIVEX_ERR_FORMAT) ? kExitIo : kExitUsage;
  throw CliError{code, pivex_last_error()};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Plain "key: value" manifest written next to an output file.
class Manifest {
 public:
  Manifest(std::string command, std::string started)
      : command_(std::move(command)), started_(std::move(started)) {}

  void config(const std::string& key_value_lines) { config_ = key_value_lines; }
  void output(const std::string& path) { outputs_.push_back(path); }
  void note(const std::string& key, const std::string& value) { notes_.emplace_back(key, value); }

  void write(const std::string& path) const {
    std::ofstream out(path, std::ios::trunc);
    out << "command: " << command_ << '\n';
    out << "version: " << pivex_version() << '\n';
    out << "started: " << started_ << '\n';
    for (const auto& o : outputs_) out << "output: " << o << '\n';
    for (const auto& [k, v] : notes_) out << k << ": " << v << '\n';
    std::istringstream lines(config_);
    for (std::string line; std::getline(lines, line);) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      out << "config." << line.substr(0, eq) << ": " << line.substr(eq + 1) << '\n';
    }
    out.close();
    if (!out) throw CliError{kExitIo, "cannot write manifest '" + path + "'"};
  }

 private:
  std::string command_;
  std::string started_;
  std::string config_;
  std::vector<std::string> outputs_;
  std::vector<std::pair<std::string, std::string>> notes_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{kExitIo, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

class Experiment {
 public:
  Experiment() { check(pivex_experiment_create(&cfg_)); }
  ~Experiment() { pivex_experiment_free(cfg_); }
  Experiment(const Experiment&) = delete;
  Experiment& operator=(const Experiment&) = delete;

  void set(const std::string& key, const std::string& value) {
    check(pivex_experiment_set(cfg_, key.c_str(), value.c_str()));
  }
  void load(const std::string& text) { check(pivex_experiment_load_text(cfg_, text.c_str())); }
  std::string snapshot() { return pivex_experiment_snapshot(cfg_); }
  pivex_experiment* get() { return cfg_; }

 private:
  pivex_experiment* cfg_ = nullptr;
};

// Flags shared by tau-sweep and bench; each maps to an experiment key.
struct ExperimentFlags {
  std::string config_path;
  std::string out;
  std::vector<std::pair<std::string, CLI::Option*>> keyed;
  std::vector<std::pair<std::string, std::string>> values;
  bool global_mean = false;
  bool in_dataset = false;
  CLI::Option* global_mean_opt = nullptr;
  CLI::Option* in_dataset_opt = nullptr;

  void attach(CLI::App* cmd, bool with_tau) {
    static const std::vector<std::pair<std::string, std::string>> kFlags = {
        {"dims", "comma separated dimensions"},
        {"n-data", "data points per dimension"},
        {"n-queries", "queries per dimension"},
        {"pivots", "comma separated pivot counts"},
        {"taus", "tau grid lo:hi:step or comma list"},
        {"mechanisms", "hyperplane,hilbert,ptolemaic,combined"},
        {"seed", "64-bit seed"},
        {"knn-k", "threshold calibration rank"},
        {"workers", "worker threads"},
        {"metric", "euclidean, cosine, js, tri, sqrt:<inner>"},
    };
    values.reserve(kFlags.size() + 1);
    for (const auto& [name, help] : kFlags) {
      values.emplace_back(name, "");
      keyed.emplace_back(name, cmd->add_option("--" + name, values.back().second, help));
    }
    if (with_tau) {
      values.emplace_back("tau", "");
      keyed.emplace_back("tau", cmd->add_option("--tau", values.back().second,
                                                "fixed tau, or 'auto' for the best of a local sweep"));
    }
    cmd->add_option("--config", config_path, "key=value config file; flags override it");
    cmd->add_option("--out", out, "output CSV path")->required();
    global_mean_opt = cmd->add_flag("--global-mean-threshold", global_mean,
                                    "one threshold for all queries: the mean k-NN distance");
    in_dataset_opt = cmd->add_flag("--pivots-in-dataset", in_dataset,
                                   "draw pivots from the data set instead of a separate stream");
  }

  void apply(Experiment& exp) const {
    if (!config_path.empty()) exp.load(read_file(config_path));
    for (std::size_t i = 0; i < keyed.size(); ++i) {
      if (keyed[i].second->count() == 0) continue;
      std::string key = keyed[i].first;
      for (char& c : key) {
        if (c == '-') c = '_';
      }
      exp.set(key, values[i].second);
    }
    if (global_mean_opt->count()) exp.set("threshold", "global-mean");
    if (in_dataset_opt->count()) exp.set("pivots_in_dataset", "true");
  }
};

class Report {
 public:
  explicit Report(pivex_report* r) : r_(r) {}
  ~Report() { pivex_report_free(r_); }
  Report(const Report&) = delete;
  Report& operator=(const Report&) = delete;
  pivex_report* get() const { return r_; }

 private:
  pivex_report* r_;
};

std::vector<std::size_t> dims_of(const pivex_report* r) {
  std::vector<std::size_t> dims;
  pivex_report_row row{};
  for (std::size_t i = 0; i < pivex_report_row_count(r); ++i) {
    check(pivex_report_row_at(r, i, &row));
    if (dims.empty() || dims.back() != row.dim) dims.push_back(row.dim);
  }
  return dims;
}

int run_sweep(bool tau_sweep, ExperimentFlags& flags, const std::string& started) {
  Experiment exp;
  flags.apply(exp);
  pivex_report* raw = nullptr;
  check(tau_sweep ? pivex_sweep_tau(exp.get(), &raw) : pivex_sweep_dimensions(exp.get(), &raw));
  Report report(raw);
  check(pivex_report_write_csv(report.get(), flags.out.c_str()));

  Manifest manifest(tau_sweep ? "tau-sweep" : "bench", started);
  manifest.config(exp.snapshot());
  manifest.output(flags.out);
  for (std::size_t dim : dims_of(report.get())) {
    double tau = 0.0;
    if (pivex_report_best_tau(report.get(), dim, &tau) == PIVEX_OK) {
      const std::string key = (tau_sweep ? "best_tau." : "tau.") + std::to_string(dim);
      manifest.note(key, fmt(tau));
      std::cout << key << " = " << fmt(tau) << '\n';
    }
  }
  manifest.write(flags.out + ".manifest.txt");
  std::cout << "wrote " << flags.out << " (" << pivex_report_row_count(report.get()) << " rows)\n";
  return kExitOk;
}

struct Dataset {
  pivex_dataset* ds = nullptr;
  ~Dataset() { pivex_dataset_free(ds); }
};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string started = utc_timestamp();
  CLI::App app{"pivex: pivot-pair partitioning and exclusion for exact metric search"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pivex_version()));

  // gen
  auto* gen = app.add_subcommand("gen", "generate a uniform dataset file");
  std::size_t gen_dim = 0, gen_n = 0;
  std::uint64_t gen_seed = 1;
  std::string gen_out, gen_metric = "euclidean";
  gen->add_option("--dim", gen_dim, "dimension")->required()->check(CLI::PositiveNumber);
  gen->add_option("--n", gen_n, "number of points")->required();
  gen->add_option("--seed", gen_seed, "64-bit seed");
  gen->add_option("--metric", gen_metric, "metric (js/tri rows are L1-normalised)");
  gen->add_option("--out", gen_out, "output dataset path")->required();

  // tau-sweep / bench
  auto* tau_cmd = app.add_subcommand("tau-sweep", "Ptolemaic exclusion rate over a tau grid");
  ExperimentFlags tau_flags;
  tau_flags.attach(tau_cmd, false);
  auto* bench_cmd = app.add_subcommand("bench", "mechanism comparison across dimensions");
  ExperimentFlags bench_flags;
  bench_flags.attach(bench_cmd, true);

  // project
  auto* project = app.add_subcommand("project", "project a dataset onto a pivot plane");
  std::string proj_data, proj_out, proj_metric = "euclidean";
  std::vector<std::size_t> proj_pivots;
  bool proj_random = false;
  std::uint64_t proj_seed = 1;
  double proj_tau = 1.0, proj_t = 0.0;
  project->add_option("--data", proj_data, "dataset file")->required();
  project->add_option("--metric", proj_metric, "metric");
  auto* pivots_opt = project->add_option("--pivots", proj_pivots, "two pivot ids")->delimiter(',')->expected(2);
  auto* random_opt = project->add_flag("--random-pivots", proj_random, "pick two pivot ids from --seed");
  pivots_opt->excludes(random_opt);
  project->add_option("--seed", proj_seed, "seed for --random-pivots");
  project->add_option("--tau", proj_tau, "tau for the boundary curves");
  project->add_option("--t", proj_t, "query threshold for the boundary curves");
  project->add_option("--out", proj_out, "output CSV path")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "run the randomized correctness suites");
  std::uint64_t ver_cases = 1000, ver_seed = 1;
  std::string ver_metric = "euclidean,sqrt:euclidean";
  verify->add_option("--cases", ver_cases, "cases per metric");
  verify->add_option("--seed", ver_seed, "seed");
  verify->add_option("--metric", ver_metric, "comma separated metrics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    std::cerr << sub->help();
    return kExitUsage;
  }

  try {
    if (*gen) {
      Dataset d;
      check(pivex_dataset_generate_uniform(gen_dim, gen_n, gen_seed, gen_metric.c_str(), &d.ds));
      check(pivex_dataset_save(d.ds, gen_out.c_str()));
      Manifest meta("gen", started);
      meta.output(gen_out);
      meta.note("format", "MSPD f64 row-major little-endian");
      meta.note("dim", std::to_string(gen_dim));
      meta.note("count", std::to_string(gen_n));
      meta.note("seed", std::to_string(gen_seed));
      meta.note("metric", gen_metric);
      meta.note("distribution", "uniform [0,1]^dim");
      meta.write(gen_out + ".meta.txt");
      std::cout << "wrote " << gen_out << " (" << gen_n << " x " << gen_dim << ")\n";
      return kExitOk;
    }
    if (*tau_cmd) return run_sweep(true, tau_flags, started);
    if (*bench_cmd) return run_sweep(false, bench_flags, started);

    if (*project) {
      Dataset d;
      check(pivex_dataset_load(proj_data.c_str(), proj_metric.c_str(), &d.ds));
      const std::size_t n = pivex_dataset_count(d.ds);
      const std::size_t dim = pivex_dataset_dim(d.ds);
      std::size_t i0 = 0, i1 = 0;
      if (proj_random) {
        if (n < 2) throw CliError{kExitUsage, "need at least two points for random pivots"};
        i0 = splitmix(proj_seed) % n;
        i1 = splitmix(proj_seed + 1) % (n - 1);
        if (i1 >= i0) ++i1;
      } else if (proj_pivots.size() == 2) {
        i0 = proj_pivots[0];
        i1 = proj_pivots[1];
      } else {
        throw CliError{kExitUsage, "give --pivots i0,i1 or --random-pivots"};
      }
      if (i0 >= n || i1 >= n) throw CliError{kExitUsage, "pivot id out of range"};
      check(pivex_project_dataset_csv(d.ds, i0, i1, proj_out.c_str()));

      double k = 0.0, y_max = 0.0;
      check(pivex_distance(proj_metric.c_str(), pivex_dataset_row(d.ds, i0),
                           pivex_dataset_row(d.ds, i1), dim, &k));
      for (std::size_t i = 0; i < n; ++i) {
        double dp0 = 0.0;
        check(pivex_distance(proj_metric.c_str(), pivex_dataset_row(d.ds, i),
                             pivex_dataset_row(d.ds, i0), dim, &dp0));
        y_max = std::max(y_max, dp0);
      }
      const std::string boundaries = proj_out + ".boundaries.csv";
      check(pivex_boundaries_csv(k, proj_tau, proj_t, y_max, boundaries.c_str()));

      Manifest sidecar("project", started);
      sidecar.output(proj_out);
      sidecar.output(boundaries);
      sidecar.note("data", proj_data);
      sidecar.note("metric", proj_metric);
      sidecar.note("pivot0", std::to_string(i0));
      sidecar.note("pivot1", std::to_string(i1));
      sidecar.note("k", fmt(k));
      sidecar.note("tau", fmt(proj_tau));
      sidecar.note("t", fmt(proj_t));
      sidecar.write(proj_out + ".sidecar.txt");
      std::cout << "wrote " << proj_out << " and " << boundaries << '\n';
      return kExitOk;
    }

    if (*verify) {
      if (ver_cases == 0) {
        std::cerr << "warning: --cases 0, nothing to verify\n";
        return kExitOk;
      }
      std::vector<pivex_suite_result> results(8);
      std::size_t n_suites = 0;
      check(pivex_verify(ver_metric.c_str(), ver_cases, ver_seed, results.data(), results.size(),
                         &n_suites));
      bool ok = true;
      for (std::size_t i = 0; i < n_suites && i < results.size(); ++i) {
        const auto& r = results[i];
        const bool pass = r.violations == 0;
        ok = ok && pass;
        std::cout << (pass ? "PASS " : "FAIL ") << r.name << " checks=" << r.checks
                  << " violations=" << r.violations;
        if (!pass) std::cout << " first: " << r.first_violation;
        std::cout << '\n';
      }
      return ok ? kExitOk : kExitVerify;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    if (e.code == kExitUsage) {
      for (const auto* sub : app.get_subcommands()) std::cerr << sub->help();
    }
    return e.code;
  }
  return kExitUsage;
}
