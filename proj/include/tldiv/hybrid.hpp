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

#ifndef TLDIV_HYBRID_HPP_
#define TLDIV_HYBRID_HPP_

#include <cstdint>
#include <optional>

#include "tldiv/ace.hpp"
#include "tldiv/model.hpp"
#include "tldiv/recoding.hpp"

namespace tldiv {

struct HybridResult {
  Partition coarse;            // the deterministic first-stage partition
  Partition refined;           // union of the per-group sliced partitions
  AnonymizedTable table;
};

// Two-stage anonymization: the deterministic top-down partition first, then
// each of its groups is anonymized as a tiny microdata table by ace. Sub-seeds
// derive from (seed, group index), so groups draw independent randomness and a
// run is reproducible from one 64-bit seed. Empty iff not l-eligible.
std::optional<HybridResult> hybrid_run(const MicrodataTable& t, int l,
                                       std::uint64_t seed,
                                       AnonFunction fn = AnonFunction::kMbr);

std::optional<AnonymizedTable> hybrid(const MicrodataTable& t, int l,
                                      std::uint64_t seed,
                                      AnonFunction fn = AnonFunction::kMbr);

// The microdata table formed by one coarse group (shared schema).
MicrodataTable group_as_table(const QIGroup& g, const AttributeSchema& schema);

}  // namespace tldiv

#endif  // TLDIV_HYBRID_HPP_
