// Copyright 2026 The tldiv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tldiv/utility.hpp"

#include <algorithm>
#include <cmath>

#include "tldiv/rng.hpp"

namespace tldiv {

Workload generate_workload(const AttributeSchema& schema, int qd, double s,
                           std::size_t n_queries, std::uint64_t seed) {
  const int d = static_cast<int>(schema.dim());
  if (qd < 2 || qd > d + 1)
    throw SchemaError("query dimensionality must be in [2, d+1]");
  if (!(s > 0.0 && s < 1.0))
    throw SchemaError("expected selectivity must be in (0, 1)");

  const double per_attr = std::pow(s, 1.0 / qd);
  Rng rng(seed);
  Workload w;
  w.qd = qd;
  w.selectivity = s;
  w.seed = seed;

  auto make_interval = [&](std::int64_t lo, std::int64_t hi) -> Interval {
    const std::int64_t domain = hi - lo + 1;
    std::int64_t cover = static_cast<std::int64_t>(
        std::ceil(per_attr * static_cast<double>(domain)));
    cover = std::min(std::max<std::int64_t>(cover, 1), domain);
    std::int64_t start =
        lo + static_cast<std::int64_t>(rng.below(
                 static_cast<std::uint64_t>(domain - cover + 1)));
    return {start, start + cover - 1};
  };

  for (std::size_t n = 0; n < n_queries; ++n) {
    CountQuery q;
    q.qi_predicates.assign(schema.dim(), std::nullopt);
    // qd-1 distinct QI attributes, uniformly chosen
    std::vector<std::size_t> attrs(schema.dim());
    for (std::size_t i = 0; i < attrs.size(); ++i) attrs[i] = i;
    for (int pick = 0; pick < qd - 1; ++pick) {
      std::size_t j =
          pick + static_cast<std::size_t>(rng.below(attrs.size() - pick));
      std::swap(attrs[pick], attrs[j]);
    }
    for (int pick = 0; pick < qd - 1; ++pick) {
      std::size_t a = attrs[pick];
      q.qi_predicates[a] = make_interval(schema.qi[a].lo, schema.qi[a].hi);
    }
    q.sensitive_predicate = make_interval(
        0, static_cast<std::int64_t>(schema.sensitive_values.size()) - 1);
    w.queries.push_back(std::move(q));
  }
  return w;
}

std::uint64_t exact_count(const MicrodataTable& t, const CountQuery& q) {
  const AttributeSchema& schema = t.schema();
  std::uint64_t n = 0;
  for (const auto& r : t.records()) {
    bool match = true;
    for (std::size_t i = 0; i < q.qi_predicates.size() && match; ++i) {
      if (q.qi_predicates[i] && !q.qi_predicates[i]->contains(r.qi[i]))
        match = false;
    }
    if (match) {
      int vi = schema.value_index(r.sensitive);
      if (vi < 0 || !q.sensitive_predicate.contains(vi)) match = false;
    }
    if (match) ++n;
  }
  return n;
}

double estimated_count(const AnonymizedTable& published, const CountQuery& q,
                       const AttributeSchema& schema) {
  double total = 0.0;
  if (published.is_generalization()) {
    for (const auto& g : published.gen_groups()) {
      double qi_fraction = 1.0;
      for (std::size_t i = 0; i < q.qi_predicates.size(); ++i) {
        if (!q.qi_predicates[i]) continue;
        qi_fraction *=
            static_cast<double>(q.qi_predicates[i]->overlap(g.intervals[i])) /
            static_cast<double>(g.intervals[i].points());
      }
      if (qi_fraction == 0.0) continue;
      for (const auto& v : g.sensitive) {
        int vi = schema.value_index(v);
        if (vi >= 0 && q.sensitive_predicate.contains(vi))
          total += qi_fraction;
      }
    }
    return total;
  }
  for (const auto& g : published.anat_groups()) {
    std::uint64_t qi_matches = 0;
    for (const auto& qi : g.qi_rows) {
      bool match = true;
      for (std::size_t i = 0; i < q.qi_predicates.size() && match; ++i)
        if (q.qi_predicates[i] && !q.qi_predicates[i]->contains(qi[i]))
          match = false;
      if (match) ++qi_matches;
    }
    if (qi_matches == 0) continue;
    std::uint64_t sens_matches = 0;
    for (const auto& v : g.sensitive) {
      int vi = schema.value_index(v);
      if (vi >= 0 && q.sensitive_predicate.contains(vi)) ++sens_matches;
    }
    total += static_cast<double>(qi_matches) *
             static_cast<double>(sens_matches) / static_cast<double>(g.size());
  }
  return total;
}

EvalResult workload_error(const MicrodataTable& t,
                          const AnonymizedTable& published,
                          const Workload& workload,
                          std::optional<double> delta) {
  EvalResult result;
  result.delta = delta.value_or(0.005 * static_cast<double>(t.size()));
  if (workload.queries.empty()) return result;

  double sum = 0.0;
  for (const auto& q : workload.queries) {
    EvalResult::PerQuery pq;
    pq.act = exact_count(t, q);
    pq.est = estimated_count(published, q, t.schema());
    double floor = std::max(static_cast<double>(pq.act), result.delta);
    pq.error = floor == 0.0 ? 0.0 : std::abs(pq.est - (double)pq.act) / floor;
    sum += pq.error;
    result.per_query.push_back(pq);
  }
  result.workload_error = sum / static_cast<double>(workload.queries.size());
  return result;
}

}  // namespace tldiv
