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

#include "pivex/verify.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "pivex/bench.hpp"
#include "pivex/bounds.hpp"
#include "pivex/engine.hpp"
#include "pivex/partition.hpp"
#include "pivex/random.hpp"

namespace pivex {

namespace {

constexpr std::array<std::size_t, 4> kDims = {2, 5, 10, 20};
constexpr double kBoundSlack = 1e-12;

struct Case {
  Dataset data;
  Dataset refs;  // pivots, not members of data
  std::vector<double> query;
  double t = 0.0;
  double tau = 1.0;
  double radius = 0.0;  // ball M
};

Case make_case(const MetricId& metric, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t dim = kDims[rng.below(kDims.size())];
  const std::size_t n = 20 + rng.below(181);
  Case c;
  c.data = generate_uniform(dim, n, derive_seed(seed, 1), metric);
  c.refs = generate_uniform(dim, 2 + rng.below(4), derive_seed(seed, 2), metric);
  const Dataset q = generate_uniform(dim, 1, derive_seed(seed, 3), metric);
  c.query.assign(q.row(0).begin(), q.row(0).end());
  const std::size_t k = 1 + rng.below(std::min<std::size_t>(10, n));
  c.t = calibrate_threshold(c.data, c.query, k) * rng.uniform(0.25, 1.5);
  c.tau = rng.uniform(0.5, 2.0);
  c.radius = median_pivot_distance(c.data, c.refs, 0) * rng.uniform(0.7, 1.3);
  return c;
}

std::vector<Mechanism> all_mechanisms(const Case& c) {
  return {Mechanism::ball_in(c.radius), Mechanism::ball_out(c.radius), Mechanism::hyperplane(),
          Mechanism::hilbert(), Mechanism::ptolemaic(c.tau), Mechanism::combined(c.tau)};
}

class Recorder {
 public:
  explicit Recorder(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const std::string& context) {
    ++result_.checks;
    if (ok) return;
    if (result_.violations++ == 0) result_.first_violation = context;
  }
  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

std::string describe(const MetricId& m, std::uint64_t seed, std::string_view what) {
  std::ostringstream out;
  out.precision(17);
  out << m.to_string() << " case seed " << seed << ": " << what;
  return out.str();
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyConfig& cfg) {
  Recorder safety("exclusion_safety");
  Recorder covers("hilbert_covers_hyperplane");
  Recorder tau_half("tau_half_equivalence");
  Recorder bounds("bound_dominance");
  Recorder oracle("oracle_equivalence");

  for (std::size_t mi = 0; mi < cfg.metrics.size(); ++mi) {
    const MetricId& metric = cfg.metrics[mi];
    for (std::uint64_t i = 0; i < cfg.cases; ++i) {
      const std::uint64_t seed = derive_seed(cfg.seed, i, mi);
      const Case c = make_case(metric, seed);
      const PivotPair pair = PivotPair::make(c.refs, 0, 1);
      const QueryEval qe{distance(metric, c.query, c.refs.row(0)),
                         distance(metric, c.query, c.refs.row(1)), c.t};

      std::vector<double> dq(c.data.size());
      for (std::size_t s = 0; s < c.data.size(); ++s) dq[s] = c.data.distance_to(c.query, s);

      // Safety, every mechanism on one pair.
      bool safe = true;
      std::string where;
      for (const Mechanism& mech : all_mechanisms(c)) {
        const Partition pe = build_partition(c.data, c.refs, pair, mech);
        const ClassSet ex = excluded_classes(pe, qe);
        for (std::size_t s = 0; s < c.data.size(); ++s) {
          if (pe.membership(s).intersects(ex) && dq[s] <= c.t) {
            safe = false;
            where = std::string(mechanism_name(mech.kind)) + " skipped point " + std::to_string(s);
          }
        }
      }
      safety.check(safe, describe(metric, seed, where));

      const ClassSet hyper = excluded_classes(Mechanism::hyperplane(), pair.k, qe);
      const ClassSet hilb = excluded_classes(Mechanism::hilbert(), pair.k, qe);
      covers.check(hilb.includes(hyper),
                   describe(metric, seed, "hyperplane " + to_string(hyper) + " vs hilbert " +
                                              to_string(hilb)));

      // tau = 0.5 against hyperplane, point by point.
      {
        const Partition ph = build_partition(c.data, c.refs, pair, Mechanism::hyperplane());
        const Partition pp = build_partition(c.data, c.refs, pair, Mechanism::ptolemaic(0.5));
        const ClassSet exh = excluded_classes(ph, qe);
        const ClassSet exp = excluded_classes(pp, qe);
        const double eps = 1e-12 * std::max({pair.k, qe.a, qe.b, 1.0});
        const bool query_tie = std::abs(std::abs(qe.a - qe.b) - 2.0 * qe.t) <= eps;
        bool same = true;
        for (std::size_t s = 0; s < c.data.size(); ++s) {
          const bool a = ph.membership(s).intersects(exh);
          const bool b = pp.membership(s).intersects(exp);
          const bool point_tie = std::abs((*ph.dp0)[s] - (*ph.dp1)[s]) <= eps;
          if (a != b && !query_tie && !point_tie) same = false;
        }
        tau_half.check(same, describe(metric, seed, "exclusion sets differ"));
      }

      // Bounds over every datum as s.
      {
        bool ok = true;
        std::string detail;
        for (std::size_t s = 0; s < c.data.size(); ++s) {
          const QuadDistances qd{qe.a, qe.b, distance(metric, c.data.row(s), c.refs.row(0)),
                                 distance(metric, c.data.row(s), c.refs.row(1)), pair.k};
          const double ptol = ptolemaic_lower_bound(qd);
          const double four = fourpoint_lower_bound(qd);
          if (!(ptol <= four + kBoundSlack && four <= dq[s] + kBoundSlack)) {
            ok = false;
            std::ostringstream o;
            o.precision(17);
            o << "ptolemaic " << ptol << " four-point " << four << " true " << dq[s];
            detail = o.str();
          }
        }
        bounds.check(ok, describe(metric, seed, detail));
      }

      // Oracle equivalence with all pairs of the reference set.
      {
        const QuerySpec qs{c.query, c.t};
        const auto expected = brute_force(c.data, qs);
        bool ok = true;
        std::string detail;
        for (const Mechanism& mech : all_mechanisms(c)) {
          std::vector<Partition> parts;
          for (const PivotPair& p : all_pairs(c.refs, c.refs.size())) {
            parts.push_back(build_partition(c.data, c.refs, p, mech));
          }
          const QueryOutcome out = range_query(c.data, c.refs, parts, qs);
          if (out.results != expected ||
              out.distance_calls + out.excluded_count != c.data.size()) {
            ok = false;
            detail = std::string(mechanism_name(mech.kind)) + " disagrees with brute force";
          }
        }
        oracle.check(ok, describe(metric, seed, detail));
      }
    }
  }
  return {safety.take(), covers.take(), tau_half.take(), bounds.take(), oracle.take()};
}

}  // namespace pivex
