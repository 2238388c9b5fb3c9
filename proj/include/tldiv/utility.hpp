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

#ifndef TLDIV_UTILITY_HPP_
#define TLDIV_UTILITY_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "tldiv/model.hpp"
#include "tldiv/recoding.hpp"

namespace tldiv {

// COUNT(*) query: interval predicates on qd-1 QI attributes and always one on
// the sensitive attribute (an index range over the ordered value universe);
// remaining attributes are unconstrained.
struct CountQuery {
  std::vector<std::optional<Interval>> qi_predicates;  // per QI attribute
  Interval sensitive_predicate;  // indices into the sensitive universe
};

struct Workload {
  std::vector<CountQuery> queries;
  int qd = 3;
  double selectivity = 0.06;
  std::uint64_t seed = 0;
};

// Each query gets the sensitive attribute plus qd-1 distinct QI attributes,
// each carrying a uniformly placed interval over ceil(s^(1/qd) * |domain|)
// consecutive domain values.
Workload generate_workload(const AttributeSchema& schema, int qd, double s,
                           std::size_t n_queries, std::uint64_t seed);

std::uint64_t exact_count(const MicrodataTable& t, const CountQuery& q);

// Uniform-assumption estimate from the published table. Generalization: sum
// over matching rows of the per-attribute overlap fractions (integer points).
// Anatomy: per group, (QI matches) * (sensitive matches) / group size.
double estimated_count(const AnonymizedTable& published, const CountQuery& q,
                       const AttributeSchema& schema);

struct EvalResult {
  struct PerQuery {
    std::uint64_t act = 0;
    double est = 0.0;
    double error = 0.0;
  };
  std::vector<PerQuery> per_query;
  double workload_error = 0.0;
  double delta = 0.0;
};

// Per-query error |act - est| / max(act, delta); delta defaults to 0.5% of
// the table cardinality.
EvalResult workload_error(const MicrodataTable& t,
                          const AnonymizedTable& published,
                          const Workload& workload,
                          std::optional<double> delta = std::nullopt);

}  // namespace tldiv

#endif  // TLDIV_UTILITY_HPP_
