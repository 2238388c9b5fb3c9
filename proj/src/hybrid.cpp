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

#include "tldiv/hybrid.hpp"

#include "tldiv/rng.hpp"
#include "tldiv/tailor.hpp"

namespace tldiv {

MicrodataTable group_as_table(const QIGroup& g,
                              const AttributeSchema& schema) {
  return MicrodataTable(schema, g.records());
}

std::optional<HybridResult> hybrid_run(const MicrodataTable& t, int l,
                                       std::uint64_t seed, AnonFunction fn) {
  if (l < 1) throw SchemaError("l must be positive");
  auto coarse = tailor(t, l, fn);
  if (!coarse) return std::nullopt;

  std::vector<QIGroup> refined;
  for (std::size_t i = 0; i < coarse->partition.size(); ++i) {
    const QIGroup& g = coarse->partition.groups()[i];
    MicrodataTable sub = group_as_table(g, t.schema());
    // Every first-stage group is l-diverse, hence l-eligible on its own.
    Rng rng(Rng::derive(seed, i));
    BucketPartition u = assign(sub, l, rng);
    BucketPartition sliced = slice(u, t.schema());
    for (const auto& b : sliced.buckets) refined.push_back(b.as_group());
  }
  Partition refined_partition(std::move(refined));
  AnonymizedTable table = anonymize(refined_partition, fn);
  return HybridResult{std::move(coarse->partition),
                      std::move(refined_partition), std::move(table)};
}

std::optional<AnonymizedTable> hybrid(const MicrodataTable& t, int l,
                                      std::uint64_t seed, AnonFunction fn) {
  auto run = hybrid_run(t, l, seed, fn);
  if (!run) return std::nullopt;
  return std::move(run->table);
}

}  // namespace tldiv
